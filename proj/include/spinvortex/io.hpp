#pragma once

// File formats: VFLD binary field dumps, 8-bit binary PGM masks, CSV profiles.
//
// VFLD (little-endian):
//   char[4] "VFLD" | u32 nx | u32 ny | f64 dx | f64 dy | u32 ncomponents
//   then, component after component, nx*ny (re, im) f64 pairs in row-major order.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include "grid.hpp"

namespace spinvortex::io {

class io_error : public error {
public:
  using error::error;
};

namespace detail {

template <class T>
void put_le(std::vector<char>& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.insert(out.end(), bytes, bytes + sizeof(T));
}

template <class T>
T get_le(const char* in) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, in, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

inline void write_bytes(const std::filesystem::path& path, const std::vector<char>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw io_error("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw io_error("write failed: " + path.string());
}

inline std::vector<char> read_bytes(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace detail

inline constexpr std::size_t vfld_header_size = 32;

struct FieldFile {
  GridSpec grid{};
  std::vector<ComplexField> components;
};

inline std::vector<char> encode_vfld(const std::vector<ComplexField>& components) {
  if (components.empty()) throw invalid_input("VFLD needs at least one component");
  const GridSpec& grid = components.front().grid();
  for (const auto& c : components) components.front().check_same_grid(c);
  std::vector<char> out;
  out.reserve(vfld_header_size + components.size() * grid.size() * 16);
  for (char c : {'V', 'F', 'L', 'D'}) out.push_back(c);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.nx));
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.ny));
  detail::put_le<double>(out, grid.dx);
  detail::put_le<double>(out, grid.dy);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(components.size()));
  for (const auto& c : components)
    for (const auto& v : c.values()) {
      detail::put_le<double>(out, v.real());
      detail::put_le<double>(out, v.imag());
    }
  return out;
}

inline FieldFile decode_vfld(const std::vector<char>& bytes) {
  if (bytes.size() < vfld_header_size || std::memcmp(bytes.data(), "VFLD", 4) != 0)
    throw io_error("not a VFLD file");
  const char* p = bytes.data() + 4;
  FieldFile file;
  file.grid.nx = detail::get_le<std::uint32_t>(p);
  file.grid.ny = detail::get_le<std::uint32_t>(p + 4);
  file.grid.dx = detail::get_le<double>(p + 8);
  file.grid.dy = detail::get_le<double>(p + 16);
  const auto ncomp = detail::get_le<std::uint32_t>(p + 24);
  file.grid.validate();
  if (ncomp == 0) throw io_error("VFLD file has no components");
  const std::size_t n = file.grid.size();
  if (bytes.size() != vfld_header_size + std::size_t{ncomp} * n * 16)
    throw io_error("VFLD payload size does not match its header");
  p = bytes.data() + vfld_header_size;
  for (std::uint32_t c = 0; c < ncomp; ++c) {
    ComplexField f(file.grid);
    for (std::size_t i = 0; i < n; ++i, p += 16) f[i] = {detail::get_le<double>(p), detail::get_le<double>(p + 8)};
    file.components.push_back(std::move(f));
  }
  return file;
}

inline void write_vfld(const std::filesystem::path& path, const std::vector<ComplexField>& components) {
  detail::write_bytes(path, encode_vfld(components));
}

template <std::size_t N>
void write_vfld(const std::filesystem::path& path, const SpinorField<N>& field) {
  std::vector<ComplexField> comps;
  for (std::size_t c = 0; c < N; ++c) comps.push_back(field[c]);
  write_vfld(path, comps);
}

inline void write_vfld(const std::filesystem::path& path, const ComplexField& field) {
  write_vfld(path, std::vector<ComplexField>{field});
}

inline FieldFile read_vfld(const std::filesystem::path& path) { return decode_vfld(detail::read_bytes(path)); }

// ---------------------------------------------------------------------------
// PGM (P5, maxval 255). Values in [0, 1] map to round(255 v).

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels; ///< row-major, top row first
};

/// Row iy = 0 of the grid (most negative y) becomes the bottom image row.
inline GrayImage to_gray(const GridSpec& grid, const std::vector<double>& values) {
  if (values.size() != grid.size()) throw invalid_input("value count must equal nx*ny");
  GrayImage img{grid.nx, grid.ny, std::vector<std::uint8_t>(grid.size())};
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double v = std::clamp(values[grid.index(ix, iy)], 0.0, 1.0);
      img.pixels[(grid.ny - 1 - iy) * grid.nx + ix] = static_cast<std::uint8_t>(std::lround(255.0 * v));
    }
  return img;
}

inline void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::vector<char> out;
  const std::string header = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  detail::write_bytes(path, out);
}

inline GrayImage read_pgm(const std::filesystem::path& path) {
  const auto bytes = detail::read_bytes(path);
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#')
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      else if (std::isspace(static_cast<unsigned char>(bytes[pos])))
        ++pos;
      else
        break;
    }
    std::string t;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) t += bytes[pos++];
    return t;
  };
  if (token() != "P5") throw io_error("not a binary PGM (P5) file");
  GrayImage img;
  try {
    img.width = std::stoul(token());
    img.height = std::stoul(token());
    if (std::stoul(token()) != 255) throw io_error("only 8-bit PGM is supported");
  } catch (const std::logic_error&) {
    throw io_error("malformed PGM header");
  }
  ++pos; // single whitespace after maxval
  if (bytes.size() - pos != img.width * img.height) throw io_error("PGM payload size mismatch");
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return img;
}

// ---------------------------------------------------------------------------
// CSV

/// Writes columns with a header row; all columns must have equal length.
/// Numbers use 17 significant digits so the text round-trips exactly.
inline void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw invalid_input("CSV header and column counts differ");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw invalid_input("CSV columns have different lengths");
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c][r];
    os << '\n';
  }
  const std::string s = os.str();
  detail::write_bytes(path, std::vector<char>(s.begin(), s.end()));
}

} // namespace spinvortex::io
