#pragma once

// Fourier holography: scalar fork masks, matrix-valued spinor masks, far-field
// reconstruction and diffraction-order bookkeeping.
//
// Convention: the mask is recorded with the tilted reference Psi_R = e^{i k_x x}
// and illuminated by the same Psi_R, so a raw mask |Psi_R + Psi_T|^2 puts the
// target, reference and conjugate lobes at offsets 0, k_x, 2 k_x. Order index j
// always means "lobe centred at j k_x" in the far field.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "fft.hpp"
#include "field_ops.hpp"

namespace spinvortex::holography {

/// Carrier k_x that puts exactly `fringes` fringes across the grid width, so
/// that the order-1 lobe lands on an integer pixel offset of `fringes`.
inline double carrier_from_fringes(const GridSpec& grid, double fringes) {
  return 2.0 * std::numbers::pi * fringes / (static_cast<double>(grid.nx) * grid.dx);
}

/// Lobe spacing in far-field pixels for carrier k_x.
inline double carrier_pixels(const GridSpec& grid, double kx) { return kx / grid.reciprocal().dx; }

inline ComplexField tilted_plane_wave(const GridSpec& grid, double kx) {
  ComplexField f(grid);
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) f.at(ix, iy) = std::polar(1.0, kx * grid.x(ix));
  return f;
}

/// A(r) e^{i n phi}: unit-amplitude phase vortex inside the aperture.
inline ComplexField aperture_vortex(const GridSpec& grid, int n, const Aperture& aperture) {
  const auto a = spinvortex::detail::sample_radial(grid, [&](double r) { return aperture(r); });
  return vortex_from_radial(grid, n, a);
}

inline void check_tilt(const GridSpec& grid, double kx) {
  spinvortex::detail::require(std::isfinite(kx) && kx > 0.0, "tilt k_x must be positive");
  if (!(kx * grid.dx < std::numbers::pi / 4.0))
    throw sampling_error("tilt unresolvable: k_x dx = " + std::to_string(kx * grid.dx) +
                         " must be below pi/4 (at least 8 pixels per fringe)");
}

// ---------------------------------------------------------------------------
// Scalar masks

struct HologramMask {
  GridSpec grid{};
  std::vector<double> transmission; ///< row-major, nx*ny
  double tilt_kx = 0.0;
  int target_n = 0;
  double aperture_radius = 0.0;
  bool binary = false;

  [[nodiscard]] ComplexField as_field() const {
    ComplexField f(grid);
    for (std::size_t i = 0; i < transmission.size(); ++i) f[i] = transmission[i];
    return f;
  }
};

/// Default edge taper of the raw-mask aperture, in pixels.
inline constexpr double default_mask_taper_px = 2.0;

/// Raw mask A(r) |e^{i k_x x} + e^{i n phi}|^2, or with `binarize` the indicator
/// of |...|^2 above its median inside the hard disk r < aperture_R.
inline HologramMask synthesize_scalar_mask(int target_n, double tilt_kx, double aperture_R, const GridSpec& grid,
                                           bool binarize,
                                           double taper_px = default_mask_taper_px) {
  grid.validate();
  check_tilt(grid, tilt_kx);
  spinvortex::detail::require(aperture_R > 0.0, "aperture radius must be positive");
  spinvortex::detail::require(taper_px >= 0.0, "aperture taper must be non-negative");
  const double taper = taper_px * grid.dx;
  if (aperture_R + 2.0 * taper >= grid.half_width())
    throw invalid_input("aperture overflows the grid");

  HologramMask mask;
  mask.grid = grid;
  mask.tilt_kx = tilt_kx;
  mask.target_n = target_n;
  mask.aperture_radius = aperture_R;
  mask.binary = binarize;
  mask.transmission.assign(grid.size(), 0.0);

  const Aperture window{aperture_R, taper};
  std::vector<double> inside;
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x(ix);
      const double y = grid.y(iy);
      const complex psi = std::polar(1.0, tilt_kx * x) + spinvortex::detail::azimuthal_phase(target_n, x, y);
      const double intensity = std::norm(psi);
      const double r = std::hypot(x, y);
      if (binarize) {
        mask.transmission[grid.index(ix, iy)] = intensity;
        if (r < aperture_R) inside.push_back(intensity);
      } else {
        mask.transmission[grid.index(ix, iy)] = window(r) * intensity;
      }
    }

  if (binarize) {
    spinvortex::detail::require(!inside.empty(), "aperture contains no pixels");
    auto mid = inside.begin() + static_cast<std::ptrdiff_t>(inside.size() / 2);
    std::nth_element(inside.begin(), mid, inside.end());
    const double threshold = *mid;
    for (std::size_t iy = 0; iy < grid.ny; ++iy)
      for (std::size_t ix = 0; ix < grid.nx; ++ix) {
        auto& t = mask.transmission[grid.index(ix, iy)];
        const bool in = std::hypot(grid.x(ix), grid.y(iy)) < aperture_R;
        t = (in && t > threshold) ? 1.0 : 0.0;
      }
  }
  return mask;
}

inline ComplexField reconstruct_far_field(const HologramMask& mask, const ComplexField& illumination) {
  if (!(mask.grid == illumination.grid())) throw invalid_input("illumination grid differs from mask grid");
  return fourier_transform(mask.as_field() * illumination, FftDirection::forward);
}

// ---------------------------------------------------------------------------
// Diffraction orders

struct ExtractedOrder {
  int index = 0;
  double offset_px = 0.0;  ///< lobe centre offset along x, far-field pixels
  ComplexField field;      ///< windowed lobe, re-centred
  int charge = 0;
  double residual = 0.0;   ///< winding - charge
  double loop_radius_px = 0.0;
};

struct DiffractionOrders {
  std::vector<ExtractedOrder> orders;
  [[nodiscard]] const ExtractedOrder* find(int index) const {
    for (const auto& o : orders)
      if (o.index == index) return &o;
    return nullptr;
  }
};

namespace detail {

/// Copies the disk of `radius_px` around pixel (cx, cy) to the grid centre.
inline ComplexField crop_recentre(const ComplexField& f, long cx, long cy, double radius_px) {
  const auto& grid = f.grid();
  ComplexField out(grid);
  const long r = static_cast<long>(std::ceil(radius_px));
  const long hx = static_cast<long>(grid.nx / 2);
  const long hy = static_cast<long>(grid.ny / 2);
  for (long dy = -r; dy <= r; ++dy)
    for (long dx = -r; dx <= r; ++dx) {
      if (std::hypot(static_cast<double>(dx), static_cast<double>(dy)) > radius_px) continue;
      out.at(static_cast<std::size_t>(hx + dx), static_cast<std::size_t>(hy + dy)) =
          f.at(static_cast<std::size_t>(cx + dx), static_cast<std::size_t>(cy + dy));
    }
  return out;
}

/// Radius (pixels) of the brightest ring of a centred lobe, clamped to
/// [1.5, window - 1.5].
inline double brightest_ring_px(const ComplexField& lobe, double window_px) {
  const auto& grid = lobe.grid();
  const std::size_t nbins = static_cast<std::size_t>(std::ceil(window_px)) + 1;
  std::vector<double> sum(nbins, 0.0);
  std::vector<std::size_t> count(nbins, 0);
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double r = std::hypot(static_cast<double>(ix) - static_cast<double>(grid.nx / 2),
                                  static_cast<double>(iy) - static_cast<double>(grid.ny / 2));
      const auto b = static_cast<std::size_t>(std::lround(r));
      if (b >= nbins || r > window_px) continue;
      sum[b] += std::abs(lobe.at(ix, iy));
      ++count[b];
    }
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t b = 0; b < nbins; ++b) {
    if (count[b] == 0) continue;
    const double mean = sum[b] / static_cast<double>(count[b]);
    if (mean > best_value) {
      best_value = mean;
      best = b;
    }
  }
  return std::clamp(static_cast<double>(best), 1.5, std::max(1.5, window_px - 1.5));
}

} // namespace detail

/// Crops the lobe centred at `order` x carrier, re-centres it and measures its
/// charge on the brightest ring (or a loop of `loop_radius_px` if positive).
/// A zero `window_radius_px` means half the carrier spacing.
inline ExtractedOrder extract_order(const ComplexField& farfield, int order, double carrier_kx,
                                    double window_radius_px = 0.0, double loop_radius_px = 0.0) {
  const auto& grid = farfield.grid();
  spinvortex::detail::require(carrier_kx > 0.0, "carrier must be positive");
  const double spacing = carrier_kx / grid.dx;
  const double window = window_radius_px > 0.0 ? window_radius_px : std::floor(spacing / 2.0);
  spinvortex::detail::require(window >= 2.0, "order window must be at least 2 pixels");
  if (2.0 * window > spacing + 1e-9)
    throw invalid_input("order window of " + std::to_string(window) + " px overlaps the neighbouring order (" +
                        std::to_string(spacing) + " px apart)");

  const double offset = order * spacing;
  const long cx = static_cast<long>(grid.nx / 2) + std::lround(offset);
  const long cy = static_cast<long>(grid.ny / 2);
  const long r = static_cast<long>(std::ceil(window));
  if (cx - r < 0 || cx + r >= static_cast<long>(grid.nx) || cy - r < 0 || cy + r >= static_cast<long>(grid.ny))
    throw invalid_input("order " + std::to_string(order) + " lies outside the far-field grid");

  ExtractedOrder out;
  out.index = order;
  out.offset_px = offset;
  out.field = detail::crop_recentre(farfield, cx, cy, window);
  out.loop_radius_px = loop_radius_px > 0.0 ? loop_radius_px : detail::brightest_ring_px(out.field, window);
  const auto m = topological_charge(out.field, out.loop_radius_px * grid.dx);
  out.charge = m.charge;
  out.residual = m.residual();
  return out;
}

inline DiffractionOrders extract_orders(const ComplexField& farfield, const std::vector<int>& indices,
                                        double carrier_kx, double window_radius_px = 0.0) {
  DiffractionOrders out;
  for (int j : indices) out.orders.push_back(extract_order(farfield, j, carrier_kx, window_radius_px));
  return out;
}

/// |<a|b>| / (||a|| ||b||)
inline double normalized_overlap(const ComplexField& a, const ComplexField& b) {
  const double na = quadrature_norm(a);
  const double nb = quadrature_norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) throw degenerate_field("overlap with a zero field");
  return std::abs(inner_product(a, b)) / std::sqrt(na * nb);
}

/// Overlap of an extracted order-0 lobe with the far field of the analytic
/// target A(r) e^{i n phi}, cropped with the same window.
inline double overlap_with_analytic(const ExtractedOrder& lobe, const HologramMask& mask,
                                    double window_radius_px = 0.0) {
  const double spacing = carrier_pixels(mask.grid, mask.tilt_kx);
  const double window = window_radius_px > 0.0 ? window_radius_px : std::floor(spacing / 2.0);
  const double taper = mask.binary ? 0.0 : default_mask_taper_px * mask.grid.dx;
  const auto target = aperture_vortex(mask.grid, mask.target_n, Aperture{mask.aperture_radius, taper});
  const auto spectrum = fourier_transform(target, FftDirection::forward);
  const auto& kg = spectrum.grid();
  const auto cropped = detail::crop_recentre(spectrum, static_cast<long>(kg.nx / 2), static_cast<long>(kg.ny / 2),
                                             window);
  return normalized_overlap(lobe.field, cropped);
}

// ---------------------------------------------------------------------------
// Matrix masks

/// Per-pixel 2x2 matrix (a b; c d).
struct MatrixMask {
  ComplexField a, b, c, d;

  [[nodiscard]] const GridSpec& grid() const { return a.grid(); }
  [[nodiscard]] Spinor2Field apply(const Spinor2Field& psi) const {
    if (!(psi.grid() == grid())) throw invalid_input("spinor grid differs from mask grid");
    Spinor2Field out(grid());
    for (std::size_t i = 0; i < grid().size(); ++i) {
      out[0][i] = a[i] * psi[0][i] + b[i] * psi[1][i];
      out[1][i] = c[i] * psi[0][i] + d[i] * psi[1][i];
    }
    return out;
  }
  [[nodiscard]] bool all_finite() const { return a.all_finite() && b.all_finite() && c.all_finite() && d.all_finite(); }
};

struct MatrixMaskOptions {
  complex C1{1.0};
  complex C2{1.0};
  complex C3{1.0};
  /// Swap the up/down components of Psi_T^*.
  bool swap_conjugate = false;
  /// Multiply Psi_T^* by (psi_R / |psi_R|)^2 so the conjugate term is carried
  /// at 2 k_x instead of overlapping the target at the centre.
  bool carrier_conjugate = false;
  /// Zero the mask outside this radius.
  std::optional<double> aperture_radius;
};

/// Reference amplitudes below this fraction of the maximum count as zeros.
inline constexpr double reference_floor = 1e-9;

/// Diagonal solution m_ii = (C1 psi_R^i + C2 psi_T^i + C3 conj(psi_T^j)) / psi_R^i of
/// M Psi_R = C1 Psi_R + C2 Psi_T + C3 Psi_T^*, with j = i (or swapped).
inline MatrixMask synthesize_matrix_mask(const Spinor2Field& target, const Spinor2Field& reference,
                                         const MatrixMaskOptions& opt = {}) {
  const auto& grid = reference.grid();
  if (!(target.grid() == grid)) throw invalid_input("target and reference grids differ");
  if (opt.aperture_radius) spinvortex::detail::require(*opt.aperture_radius > 0.0, "aperture radius must be positive");

  auto inside = [&](std::size_t ix, std::size_t iy) {
    return !opt.aperture_radius || std::hypot(grid.x(ix), grid.y(iy)) <= *opt.aperture_radius;
  };
  double rmax = 0.0;
  for (std::size_t c = 0; c < 2; ++c)
    for (const auto& v : reference[c].values()) rmax = std::max(rmax, std::abs(v));
  if (!(rmax > 0.0)) throw singular_operator("reference wave is identically zero");

  MatrixMask m{ComplexField(grid), ComplexField(grid), ComplexField(grid), ComplexField(grid)};
  for (std::size_t iy = 0; iy < grid.ny; ++iy)
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      if (!inside(ix, iy)) continue;
      const std::size_t i = grid.index(ix, iy);
      for (std::size_t c = 0; c < 2; ++c) {
        const complex r = reference[c][i];
        if (std::abs(r) < reference_floor * rmax)
          throw singular_operator("reference amplitude vanishes inside the aperture");
        complex conj_t = std::conj(target[opt.swap_conjugate ? 1 - c : c][i]);
        if (opt.carrier_conjugate) {
          const complex u = r / std::abs(r);
          conj_t *= u * u;
        }
        const complex entry = (opt.C1 * r + opt.C2 * target[c][i] + opt.C3 * conj_t) / r;
        (c == 0 ? m.a : m.d)[i] = entry;
      }
    }
  return m;
}

/// Equal-amplitude tilted plane wave in both components.
inline Spinor2Field tilted_reference(const GridSpec& grid, double kx) {
  const auto w = tilted_plane_wave(grid, kx);
  return Spinor2Field({w, w});
}

inline Spinor2Field reconstruct_far_field(const MatrixMask& mask, const Spinor2Field& illumination) {
  return fourier_transform(mask.apply(illumination), FftDirection::forward);
}

struct PauliDecomposition {
  ComplexField a0, ax, ay, az;
  std::vector<double> hermiticity_defect; ///< ||M - M^dag||_F / ||M||_F per pixel, 0 where M = 0
  [[nodiscard]] double max_hermiticity_defect() const {
    double m = 0.0;
    for (double v : hermiticity_defect) m = std::max(m, v);
    return m;
  }
  /// a0 1 + a . sigma
  [[nodiscard]] MatrixMask reconstruct() const {
    const complex i(0.0, 1.0);
    return MatrixMask{a0 + az, ax - i * ay, ax + i * ay, a0 - az};
  }
};

inline PauliDecomposition pauli_decompose(const MatrixMask& mask) {
  const auto& grid = mask.grid();
  const complex i(0.0, 1.0);
  PauliDecomposition out{ComplexField(grid), ComplexField(grid), ComplexField(grid), ComplexField(grid),
                         std::vector<double>(grid.size(), 0.0)};
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const complex a = mask.a[p], b = mask.b[p], c = mask.c[p], d = mask.d[p];
    out.a0[p] = 0.5 * (a + d);
    out.ax[p] = 0.5 * (b + c);
    out.ay[p] = 0.5 * i * (b - c);
    out.az[p] = 0.5 * (a - d);
    const double norm = std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    if (norm > 0.0) {
      const double defect = std::sqrt(std::norm(a - std::conj(a)) + std::norm(d - std::conj(d)) +
                                      2.0 * std::norm(b - std::conj(c)));
      out.hermiticity_defect[p] = defect / norm;
    }
  }
  return out;
}

} // namespace spinvortex::holography
