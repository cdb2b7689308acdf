#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spinvortex {

using complex = std::complex<double>;

/// Uniform 2D sampling. Pixel (ix, iy) sits at x = (ix - nx/2) dx, y = (iy - ny/2) dy,
/// so the grid origin is a pixel centre. Storage is row-major in y.
struct GridSpec {
  std::size_t nx = 512;
  std::size_t ny = 512;
  double dx = 1.0;
  double dy = 1.0;

  [[nodiscard]] std::size_t size() const { return nx * ny; }
  [[nodiscard]] std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
  [[nodiscard]] double x(std::size_t ix) const {
    return (static_cast<double>(ix) - static_cast<double>(nx / 2)) * dx;
  }
  [[nodiscard]] double y(std::size_t iy) const {
    return (static_cast<double>(iy) - static_cast<double>(ny / 2)) * dy;
  }
  [[nodiscard]] double half_width() const {
    return 0.5 * std::min(static_cast<double>(nx) * dx, static_cast<double>(ny) * dy);
  }
  [[nodiscard]] double cell_area() const { return dx * dy; }
  /// Largest representable wavenumber along x.
  [[nodiscard]] double nyquist() const { return std::numbers::pi / std::max(dx, dy); }

  /// Sampling of the Fourier-dual grid produced by a centred DFT.
  [[nodiscard]] GridSpec reciprocal() const {
    return {nx, ny, 2.0 * std::numbers::pi / (static_cast<double>(nx) * dx),
            2.0 * std::numbers::pi / (static_cast<double>(ny) * dy)};
  }

  void validate() const {
    detail::require(nx >= 16 && ny >= 16, "grid must be at least 16x16");
    detail::require(nx % 2 == 0 && ny % 2 == 0, "grid dimensions must be even");
    detail::require(std::isfinite(dx) && std::isfinite(dy) && dx > 0.0 && dy > 0.0,
                    "grid spacing must be positive");
  }

  /// Spacings compare with a relative tolerance so that forward/inverse
  /// transforms land back on the same grid.
  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    auto close = [](double u, double v) { return std::abs(u - v) <= 1e-12 * std::max(std::abs(u), std::abs(v)); };
    return a.nx == b.nx && a.ny == b.ny && close(a.dx, b.dx) && close(a.dy, b.dy);
  }
};

/// Square n x n grid whose spacing gives k * dx = k_dx.
inline GridSpec grid_for_wavenumber(std::size_t n, double k, double k_dx) {
  detail::require(k > 0.0 && k_dx > 0.0, "wavenumber and k*dx must be positive");
  return {n, n, k_dx / k, k_dx / k};
}

/// Refuses grids that resolve a transverse wavenumber with less than the
/// 4x Nyquist headroom needed for phase-ramp and charge measurements.
inline void check_sampling(const GridSpec& grid, double k_perp,
                           double limit = std::numbers::pi / 4) {
  const double kdx = k_perp * std::max(grid.dx, grid.dy);
  if (!(kdx < limit)) {
    throw sampling_error("sampling violation: k_perp*dx = " + std::to_string(kdx) +
                         " must be below " + std::to_string(limit));
  }
}

/// Smooth circular window w(r) = erfc((r - radius)/taper) / 2.
struct Aperture {
  double radius = 0.0;
  double taper = 0.0;

  [[nodiscard]] double operator()(double r) const {
    if (taper <= 0.0) return r <= radius ? 1.0 : 0.0;
    return 0.5 * std::erfc((r - radius) / taper);
  }
  /// Radius inside which the window equals 1 to double precision.
  [[nodiscard]] double flat_radius() const { return radius - 8.0 * taper; }

  static Aperture default_for(const GridSpec& grid) {
    return {0.45 * grid.half_width(), 4.0 * std::max(grid.dx, grid.dy)};
  }
};

class ComplexField {
public:
  ComplexField() = default;
  explicit ComplexField(const GridSpec& grid) : grid_(grid), values_(grid.size()) {}
  ComplexField(const GridSpec& grid, std::vector<complex> values)
      : grid_(grid), values_(std::move(values)) {
    detail::require(values_.size() == grid_.size(), "field value count must equal nx*ny");
  }

  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const complex> values() const { return values_; }
  [[nodiscard]] std::span<complex> values() { return values_; }

  complex& operator[](std::size_t i) { return values_[i]; }
  const complex& operator[](std::size_t i) const { return values_[i]; }
  complex& at(std::size_t ix, std::size_t iy) { return values_[grid_.index(ix, iy)]; }
  const complex& at(std::size_t ix, std::size_t iy) const { return values_[grid_.index(ix, iy)]; }

  [[nodiscard]] bool all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](const complex& v) {
      return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
  }

  ComplexField& operator+=(const ComplexField& other) {
    check_same_grid(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }
  ComplexField& operator-=(const ComplexField& other) {
    check_same_grid(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
  }
  ComplexField& operator*=(complex s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  /// Pointwise product.
  ComplexField& operator*=(const ComplexField& other) {
    check_same_grid(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
    return *this;
  }

  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
  friend ComplexField operator*(ComplexField a, complex s) { return a *= s; }
  friend ComplexField operator*(complex s, ComplexField a) { return a *= s; }
  friend ComplexField operator*(ComplexField a, const ComplexField& b) { return a *= b; }

  void check_same_grid(const ComplexField& other) const {
    if (!(grid_ == other.grid_)) throw invalid_input("grid mismatch between fields");
  }

private:
  GridSpec grid_{};
  std::vector<complex> values_;
};

/// N-component field sharing one grid (N = 2 Pauli, N = 4 Dirac).
template <std::size_t N>
class SpinorField {
public:
  static constexpr std::size_t components = N;

  SpinorField() = default;
  explicit SpinorField(const GridSpec& grid) {
    for (auto& c : comps_) c = ComplexField(grid);
  }
  explicit SpinorField(std::array<ComplexField, N> comps) : comps_(std::move(comps)) {
    for (std::size_t c = 1; c < N; ++c) comps_[0].check_same_grid(comps_[c]);
  }

  [[nodiscard]] const GridSpec& grid() const { return comps_[0].grid(); }
  ComplexField& operator[](std::size_t c) { return comps_[c]; }
  const ComplexField& operator[](std::size_t c) const { return comps_[c]; }

  /// Total density sum_c |psi^c|^2 per pixel.
  [[nodiscard]] std::vector<double> density() const {
    std::vector<double> rho(grid().size(), 0.0);
    for (const auto& comp : comps_)
      for (std::size_t i = 0; i < rho.size(); ++i) rho[i] += std::norm(comp[i]);
    return rho;
  }

  SpinorField& operator+=(const SpinorField& o) {
    for (std::size_t c = 0; c < N; ++c) comps_[c] += o.comps_[c];
    return *this;
  }
  SpinorField& operator-=(const SpinorField& o) {
    for (std::size_t c = 0; c < N; ++c) comps_[c] -= o.comps_[c];
    return *this;
  }
  SpinorField& operator*=(complex s) {
    for (auto& comp : comps_) comp *= s;
    return *this;
  }
  friend SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
  friend SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
  friend SpinorField operator*(complex s, SpinorField a) { return a *= s; }

private:
  std::array<ComplexField, N> comps_{};
};

using Spinor2Field = SpinorField<2>;
using Spinor4Field = SpinorField<4>;

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
};

namespace detail {

/// Samples f(r) on every pixel, evaluating f once per distinct (|i|, |j|) pair.
template <class F>
std::vector<double> sample_radial(const GridSpec& grid, F&& f) {
  const std::size_t hx = grid.nx / 2;
  const std::size_t hy = grid.ny / 2;
  const bool symmetric = grid.nx == grid.ny && grid.dx == grid.dy;
  std::vector<double> table((hx + 1) * (hy + 1));
  for (std::size_t b = 0; b <= hy; ++b) {
    for (std::size_t a = 0; a <= hx; ++a) {
      if (symmetric && a < b) {
        table[b * (hx + 1) + a] = table[a * (hx + 1) + b];
        continue;
      }
      const double r = std::hypot(static_cast<double>(a) * grid.dx, static_cast<double>(b) * grid.dy);
      table[b * (hx + 1) + a] = f(r);
    }
  }
  std::vector<double> out(grid.size());
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    const std::size_t b = iy >= hy ? iy - hy : hy - iy;
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const std::size_t a = ix >= hx ? ix - hx : hx - ix;
      out[grid.index(ix, iy)] = table[b * (hx + 1) + a];
    }
  }
  return out;
}

/// e^{i m phi} with phi := 0 at the origin.
inline complex azimuthal_phase(int m, double x, double y) {
  if (m == 0 || (x == 0.0 && y == 0.0)) return 1.0;
  return std::polar(1.0, m * std::atan2(y, x));
}

} // namespace detail

/// Field psi(x, y) = e^{i m phi} radial(r) with a precomputed radial table.
inline ComplexField vortex_from_radial(const GridSpec& grid, int m, std::span<const double> radial) {
  ComplexField field(grid);
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const std::size_t i = grid.index(ix, iy);
      if (radial[i] != 0.0)
        field[i] = radial[i] * detail::azimuthal_phase(m, grid.x(ix), grid.y(iy));
    }
  return field;
}

} // namespace spinvortex
