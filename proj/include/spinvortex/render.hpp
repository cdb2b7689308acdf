#pragma once

// Raster renders of fields and profiles, written as PNG. Needs libpng.

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <vector>

#include "grid.hpp"
#include "io.hpp"

namespace spinvortex::render {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels; ///< row-major, top row first

  Image() = default;
  Image(std::size_t w, std::size_t h, Rgb fill = {255, 255, 255}) : width(w), height(h), pixels(w * h, fill) {}

  Rgb& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  const Rgb& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
  void set(long x, long y, Rgb c) {
    if (x >= 0 && y >= 0 && static_cast<std::size_t>(x) < width && static_cast<std::size_t>(y) < height)
      at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = c;
  }
};

/// h in [0, 1), s, v in [0, 1].
inline Rgb hsv_to_rgb(double h, double s, double v) {
  h = h - std::floor(h);
  const double h6 = 6.0 * h;
  const int sector = static_cast<int>(h6) % 6;
  const double f = h6 - std::floor(h6);
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  double r = 0, g = 0, b = 0;
  switch (sector) {
  case 0: r = v, g = t, b = p; break;
  case 1: r = q, g = v, b = p; break;
  case 2: r = p, g = v, b = t; break;
  case 3: r = p, g = q, b = v; break;
  case 4: r = t, g = p, b = v; break;
  default: r = v, g = p, b = q; break;
  }
  auto byte = [](double x) { return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(x, 0.0, 1.0))); };
  return {byte(r), byte(g), byte(b)};
}

/// Hue = phase / 2 pi, value = |f| / amax (default max |f|).
inline Image phase_image(const ComplexField& f, double amax = 0.0) {
  const auto& grid = f.grid();
  if (amax <= 0.0)
    for (const auto& v : f.values()) amax = std::max(amax, std::abs(v));
  Image img(grid.nx, grid.ny, {0, 0, 0});
  if (amax == 0.0) return img;
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const complex v = f.at(ix, iy);
      const double hue = std::arg(v) / (2.0 * std::numbers::pi);
      img.at(ix, grid.ny - 1 - iy) = hsv_to_rgb(hue < 0 ? hue + 1.0 : hue, 1.0, std::min(1.0, std::abs(v) / amax));
    }
  return img;
}

/// Grayscale |f|^2 / imax (default max |f|^2).
inline Image intensity_image(const ComplexField& f, double imax = 0.0) {
  const auto& grid = f.grid();
  std::vector<double> rho(f.size());
  double m = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) m = std::max(m, rho[i] = std::norm(f[i]));
  if (imax > 0.0) m = imax;
  if (m > 0.0)
    for (auto& v : rho) v /= m;
  const auto gray = io::to_gray(grid, rho);
  Image img(grid.nx, grid.ny);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = {gray.pixels[i], gray.pixels[i], gray.pixels[i]};
  return img;
}

/// Central w x h window of an image.
inline Image crop_centre(const Image& src, std::size_t w, std::size_t h) {
  w = std::min(w, src.width);
  h = std::min(h, src.height);
  const std::size_t x0 = (src.width - w) / 2, y0 = (src.height - h) / 2;
  Image out(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) out.at(x, y) = src.at(x0 + x, y0 + y);
  return out;
}

/// Nearest-neighbour upscale by an integer factor.
inline Image upscale(const Image& src, std::size_t factor) {
  Image out(src.width * factor, src.height * factor);
  for (std::size_t y = 0; y < out.height; ++y)
    for (std::size_t x = 0; x < out.width; ++x) out.at(x, y) = src.at(x / factor, y / factor);
  return out;
}

/// Panels side by side with a `gap` px white gutter; heights padded to the tallest.
inline Image hconcat(const std::vector<Image>& panels, std::size_t gap = 8) {
  std::size_t w = 0, h = 0;
  for (const auto& p : panels) {
    w += p.width;
    h = std::max(h, p.height);
  }
  if (!panels.empty()) w += gap * (panels.size() - 1);
  Image out(w, h);
  std::size_t x0 = 0;
  for (const auto& p : panels) {
    for (std::size_t y = 0; y < p.height; ++y)
      for (std::size_t x = 0; x < p.width; ++x) out.at(x0 + x, y) = p.at(x, y);
    x0 += p.width + gap;
  }
  return out;
}

inline void write_png(const std::filesystem::path& path, const Image& img) {
  FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw io::io_error("cannot open " + path.string() + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw io::io_error("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw io::io_error("PNG encoding failed: " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(img.width * 3);
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      const Rgb& c = img.at(x, y);
      row[3 * x] = c.r;
      row[3 * x + 1] = c.g;
      row[3 * x + 2] = c.b;
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

// ---------------------------------------------------------------------------
// Line plots

struct Series {
  std::vector<double> x, y;
  Rgb colour{0, 0, 0};
  bool dashed = false;
};

struct Viewport {
  long x0, y0, w, h;            ///< pixel box, y0 = top
  double xmin, xmax, ymin, ymax; ///< data range
};

namespace detail {

inline void line(Image& img, long x0, long y0, long x1, long y1, Rgb c, bool dashed, long& dash_phase) {
  const long dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const long dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  long err = dx + dy;
  for (;;) {
    if (!dashed || (dash_phase / 6) % 2 == 0) {
      img.set(x0, y0, c);
      img.set(x0, y0 + 1, c);
    }
    ++dash_phase;
    if (x0 == x1 && y0 == y1) break;
    const long e2 = 2 * err;
    if (e2 >= dy) err += dy, x0 += sx;
    if (e2 <= dx) err += dx, y0 += sy;
  }
}

inline void frame(Image& img, const Viewport& vp, Rgb c) {
  long phase = 0;
  const long x1 = vp.x0 + vp.w, y1 = vp.y0 + vp.h;
  line(img, vp.x0, vp.y0, x1, vp.y0, c, false, phase);
  line(img, vp.x0, y1, x1, y1, c, false, phase);
  line(img, vp.x0, vp.y0, vp.x0, y1, c, false, phase);
  line(img, x1, vp.y0, x1, y1, c, false, phase);
}

inline void plot_series(Image& img, const Viewport& vp, const Series& s) {
  auto px = [&](double x) { return vp.x0 + std::lround((x - vp.xmin) / (vp.xmax - vp.xmin) * vp.w); };
  auto py = [&](double y) {
    const double t = std::clamp((y - vp.ymin) / (vp.ymax - vp.ymin), 0.0, 1.0);
    return vp.y0 + vp.h - std::lround(t * vp.h);
  };
  long phase = 0;
  for (std::size_t i = 1; i < s.x.size(); ++i) {
    if (s.x[i] > vp.xmax || s.x[i - 1] < vp.xmin) continue;
    line(img, px(s.x[i - 1]), py(s.y[i - 1]), px(s.x[i]), py(s.y[i]), s.colour, s.dashed, phase);
  }
}

} // namespace detail

/// Two-panel profile plot: the full range, plus an inset (upper right) zoomed
/// on x in [0, inset_xmax] with its own y range. No text.
inline Image profile_plot(const std::vector<Series>& series, double inset_xmax, std::size_t width = 800,
                          std::size_t height = 500) {
  Image img(width, height);
  double xmax = 0.0, ymax = 0.0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmax = std::max(xmax, s.x[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmax > 0.0) || !(ymax > 0.0)) throw invalid_input("nothing to plot");
  const long W = static_cast<long>(width), H = static_cast<long>(height);
  const Viewport main{W / 10, H / 12, W * 8 / 10, H * 10 / 12 - H / 12, 0.0, xmax, 0.0, 1.05 * ymax};
  const Rgb axis{0, 0, 0};
  detail::frame(img, main, axis);
  for (const auto& s : series) detail::plot_series(img, main, s);

  double inset_ymax = 0.0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (s.x[i] <= inset_xmax) inset_ymax = std::max(inset_ymax, s.y[i]);
  if (inset_xmax > 0.0 && inset_ymax > 0.0) {
    const Viewport inset{main.x0 + main.w * 55 / 100, main.y0 + main.h / 20, main.w * 4 / 10, main.h * 4 / 10,
                         0.0, inset_xmax, 0.0, 1.1 * inset_ymax};
    for (long y = inset.y0; y <= inset.y0 + inset.h; ++y)
      for (long x = inset.x0; x <= inset.x0 + inset.w; ++x) img.set(x, y, {255, 255, 255});
    detail::frame(img, inset, axis);
    for (const auto& s : series) detail::plot_series(img, inset, s);
  }
  return img;
}

} // namespace spinvortex::render
