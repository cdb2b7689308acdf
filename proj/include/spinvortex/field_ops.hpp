#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <variant>

#include "fft.hpp"
#include "grid.hpp"
#include "special.hpp"

namespace spinvortex {

// ---------------------------------------------------------------------------
// Radial profiles and scalar vortices

/// J_order(k_perp r), windowed by a smooth aperture (grid default when unset).
struct BesselRadial {
  double k_perp = 0.0;
  int order = 0;
  std::optional<Aperture> aperture;
};

/// exp(-r^2 / waist^2)
struct GaussianRadial {
  double waist = 1.0;
};

/// Hard disk of unit amplitude.
struct DiskRadial {
  double radius = 1.0;
};

using RadialSpec = std::variant<BesselRadial, GaussianRadial, DiskRadial>;

inline std::vector<double> sample_radial_profile(const GridSpec& grid, const RadialSpec& radial) {
  return std::visit(
      [&](const auto& spec) -> std::vector<double> {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, BesselRadial>) {
          check_sampling(grid, spec.k_perp);
          const Aperture ap = spec.aperture.value_or(Aperture::default_for(grid));
          return detail::sample_radial(grid, [&](double r) {
            const double w = ap(r);
            return w == 0.0 ? 0.0 : w * bessel_j(spec.order, spec.k_perp * r);
          });
        } else if constexpr (std::is_same_v<T, GaussianRadial>) {
          detail::require(spec.waist > 0.0, "gaussian waist must be positive");
          return detail::sample_radial(grid, [&](double r) { return std::exp(-r * r / (spec.waist * spec.waist)); });
        } else {
          detail::require(spec.radius > 0.0, "disk radius must be positive");
          return detail::sample_radial(grid, [&](double r) { return r <= spec.radius ? 1.0 : 0.0; });
        }
      },
      radial);
}

/// psi = e^{i m phi} radial(r) sampled at pixel centres; the phase at r = 0 is 0.
inline ComplexField make_scalar_vortex(const GridSpec& grid, int m, const RadialSpec& radial) {
  grid.validate();
  return vortex_from_radial(grid, m, sample_radial_profile(grid, radial));
}

// ---------------------------------------------------------------------------
// Quadrature

/// <f|g> = sum conj(f) g dA (midpoint rule).
inline complex inner_product(const ComplexField& f, const ComplexField& g) {
  f.check_same_grid(g);
  complex acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::conj(f[i]) * g[i];
  return acc * f.grid().cell_area();
}

template <std::size_t N>
complex inner_product(const SpinorField<N>& f, const SpinorField<N>& g) {
  complex acc = 0.0;
  for (std::size_t c = 0; c < N; ++c) acc += inner_product(f[c], g[c]);
  return acc;
}

inline double quadrature_norm(const ComplexField& f) {
  double acc = 0.0;
  for (const auto& v : f.values()) acc += std::norm(v);
  return acc * f.grid().cell_area();
}

template <std::size_t N>
double quadrature_norm(const SpinorField<N>& f) {
  double acc = 0.0;
  for (std::size_t c = 0; c < N; ++c) acc += quadrature_norm(f[c]);
  return acc;
}

inline ComplexField normalize(ComplexField f) {
  const double n = quadrature_norm(f);
  if (!(n > 0.0) || !std::isfinite(n)) throw degenerate_field("cannot normalize an identically-zero field");
  f *= 1.0 / std::sqrt(n);
  return f;
}

template <std::size_t N>
SpinorField<N> normalize(SpinorField<N> f) {
  const double n = quadrature_norm(f);
  if (!(n > 0.0) || !std::isfinite(n)) throw degenerate_field("cannot normalize an identically-zero field");
  f *= 1.0 / std::sqrt(n);
  return f;
}

/// ||a - b|| / ||b||
template <class Field>
double relative_distance(const Field& a, const Field& b) {
  return std::sqrt(quadrature_norm(a - b) / quadrature_norm(b));
}

// ---------------------------------------------------------------------------
// Spectral differentiation and L_z

struct Gradient {
  ComplexField d_dx;
  ComplexField d_dy;
};

/// Spectral gradient: multiply by i k per axis in Fourier space. The Nyquist
/// row/column is zeroed so the derivative stays anti-Hermitian.
inline Gradient spectral_gradient(const ComplexField& f) {
  const auto& grid = f.grid();
  const ComplexField spectrum = fourier_transform(f, FftDirection::forward);
  const GridSpec kg = spectrum.grid();
  ComplexField sx = spectrum;
  ComplexField sy = spectrum;
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    const double ky = iy == 0 ? 0.0 : kg.y(iy);
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double kx = ix == 0 ? 0.0 : kg.x(ix);
      const std::size_t i = grid.index(ix, iy);
      sx[i] *= complex(0.0, kx);
      sy[i] *= complex(0.0, ky);
    }
  }
  Gradient g{fourier_transform(sx, FftDirection::inverse), fourier_transform(sy, FftDirection::inverse)};
  return g;
}

/// L_z psi = -i (x d/dy - y d/dx) psi.
inline ComplexField apply_Lz(const ComplexField& f) {
  const auto& grid = f.grid();
  const Gradient g = spectral_gradient(f);
  ComplexField out(grid);
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    const double y = grid.y(iy);
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x(ix);
      const std::size_t i = grid.index(ix, iy);
      out[i] = complex(0.0, -1.0) * (x * g.d_dy[i] - y * g.d_dx[i]);
    }
  }
  return out;
}

template <std::size_t N>
SpinorField<N> apply_Lz(const SpinorField<N>& f) {
  std::array<ComplexField, N> comps;
  for (std::size_t c = 0; c < N; ++c) comps[c] = apply_Lz(f[c]);
  return SpinorField<N>(std::move(comps));
}

/// <psi|L_z psi> / <psi|psi>
template <class Field>
double expectation_Lz(const Field& f) {
  const double n = quadrature_norm(f);
  if (!(n > 0.0)) throw degenerate_field("L_z expectation of a zero field");
  return inner_product(f, apply_Lz(f)).real() / n;
}

/// ||O psi - lambda psi|| / ||psi||
template <class Field>
double eigen_residual(const Field& applied, const Field& psi, double eigenvalue) {
  Field diff = applied;
  Field scaled = psi;
  scaled *= eigenvalue;
  diff -= scaled;
  return std::sqrt(quadrature_norm(diff) / quadrature_norm(psi));
}

// ---------------------------------------------------------------------------
// Topological charge

struct ChargeMeasurement {
  int charge = 0;
  double winding = 0.0; ///< (1/2 pi) sum of wrapped phase steps, before rounding
  [[nodiscard]] double residual() const { return winding - charge; }
};

namespace detail {

inline complex bilinear(const ComplexField& f, double px, double py) {
  const auto& grid = f.grid();
  const double fx = std::floor(px);
  const double fy = std::floor(py);
  const auto ix = static_cast<std::ptrdiff_t>(fx);
  const auto iy = static_cast<std::ptrdiff_t>(fy);
  if (ix < 0 || iy < 0 || ix + 1 >= static_cast<std::ptrdiff_t>(grid.nx) ||
      iy + 1 >= static_cast<std::ptrdiff_t>(grid.ny))
    throw invalid_input("charge loop leaves the grid");
  const double tx = px - fx;
  const double ty = py - fy;
  const auto ux = static_cast<std::size_t>(ix);
  const auto uy = static_cast<std::size_t>(iy);
  return (1 - tx) * (1 - ty) * f.at(ux, uy) + tx * (1 - ty) * f.at(ux + 1, uy) +
         (1 - tx) * ty * f.at(ux, uy + 1) + tx * ty * f.at(ux + 1, uy + 1);
}

inline double wrap_phase(double d) {
  // (-pi, pi]
  d = std::remainder(d, 2.0 * std::numbers::pi);
  return d <= -std::numbers::pi ? d + 2.0 * std::numbers::pi : d;
}

} // namespace detail

/// Winding number of the phase around a circle of `loop_radius` centred on the
/// grid origin. Each phase step is wrapped individually.
inline ChargeMeasurement topological_charge(const ComplexField& f, double loop_radius,
                                            double amplitude_threshold = 1e-6) {
  const auto& grid = f.grid();
  detail::require(loop_radius > 0.0, "loop radius must be positive");
  detail::require(loop_radius < grid.half_width() - std::max(grid.dx, grid.dy),
                  "charge loop must lie inside the grid");

  double fmax = 0.0;
  for (const auto& v : f.values()) fmax = std::max(fmax, std::abs(v));
  if (!(fmax > 0.0)) throw ambiguous_charge("field is identically zero");

  const double circumference_px = 2.0 * std::numbers::pi * loop_radius / std::min(grid.dx, grid.dy);
  const int samples = std::max(64, static_cast<int>(std::ceil(8.0 * circumference_px)));
  const double cx = static_cast<double>(grid.nx / 2);
  const double cy = static_cast<double>(grid.ny / 2);

  double total = 0.0;
  double prev_phase = 0.0;
  for (int s = 0; s <= samples; ++s) {
    const double theta = 2.0 * std::numbers::pi * (s % samples) / samples;
    const complex v = detail::bilinear(f, cx + loop_radius * std::cos(theta) / grid.dx,
                                       cy + loop_radius * std::sin(theta) / grid.dy);
    if (std::abs(v) < amplitude_threshold * fmax)
      throw ambiguous_charge("field amplitude vanishes on the charge loop (radius " +
                             std::to_string(loop_radius) + ")");
    const double phase = std::arg(v);
    if (s > 0) total += detail::wrap_phase(phase - prev_phase);
    prev_phase = phase;
  }
  ChargeMeasurement m;
  m.winding = total / (2.0 * std::numbers::pi);
  m.charge = static_cast<int>(std::lround(m.winding));
  return m;
}

// ---------------------------------------------------------------------------
// Radial averaging

/// Azimuthal mean of a per-pixel quantity in annular bins of width dr, bin i
/// centred at r = i dr (bin 0 is the disk r < dr/2). Empty bins are dropped.
inline RadialProfile radial_average(const GridSpec& grid, std::span<const double> density,
                                    std::size_t nbins, std::optional<double> max_radius = std::nullopt) {
  detail::require(nbins >= 8, "radial_average needs at least 8 bins");
  detail::require(density.size() == grid.size(), "density size must match the grid");
  const double rmax = max_radius.value_or(grid.half_width() - std::max(grid.dx, grid.dy));
  const double dr = rmax / static_cast<double>(nbins - 1);
  std::vector<double> sum(nbins, 0.0);
  std::vector<std::size_t> count(nbins, 0);
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double r = std::hypot(grid.x(ix), grid.y(iy));
      const auto bin = static_cast<std::size_t>(std::floor(r / dr + 0.5));
      if (bin >= nbins) continue;
      sum[bin] += density[grid.index(ix, iy)];
      ++count[bin];
    }
  RadialProfile out;
  for (std::size_t b = 0; b < nbins; ++b) {
    if (count[b] == 0) continue;
    out.radii.push_back(static_cast<double>(b) * dr);
    out.values.push_back(sum[b] / static_cast<double>(count[b]));
  }
  return out;
}

template <std::size_t N>
RadialProfile radial_average(const SpinorField<N>& f, std::size_t nbins,
                             std::optional<double> max_radius = std::nullopt) {
  const auto rho = f.density();
  return radial_average(f.grid(), rho, nbins, max_radius);
}

inline RadialProfile radial_average(const ComplexField& f, std::size_t nbins,
                                    std::optional<double> max_radius = std::nullopt) {
  std::vector<double> rho(f.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(f[i]);
  return radial_average(f.grid(), rho, nbins, max_radius);
}

} // namespace spinvortex
