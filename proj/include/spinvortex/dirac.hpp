#pragma once

// Cylindrical solutions of the free Dirac equation (standard representation),
// the approximate L_z combinations built from them, and the relativistic
// central-density analysis of the two special states Psi_{-1}^(+), Psi_1^(-).
//
//   Psi_{n,s} = e^{i(k_z z - E t)} ( e^{i n phi} J_n,
//                                    s e^{i(n+1) phi} J_{n+1},
//                                    P_s e^{i n phi} J_n,
//                                   -s P_s e^{i(n+1) phi} J_{n+1} ),   P_s = (k_z - i s k_perp)/(E + m)
//
// Fields are transverse slices at z = t = 0.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "angular_momentum.hpp"
#include "field_ops.hpp"
#include "units.hpp"

namespace spinvortex::dirac {

/// Sigma_z / 2 in the standard representation.
inline constexpr std::array<double, 4> spin_z{+0.5, -0.5, +0.5, -0.5};

struct DiracBeamSpec {
  int n = 0;
  int s = 1; ///< transverse helicity label, +-1
  BeamKinematics kinematics{};

  void validate() const {
    spinvortex::detail::require(s == 1 || s == -1, "transverse helicity label s must be +1 or -1");
    spinvortex::detail::require(kinematics.k_perp >= 0.0 && kinematics.k_perp <= kinematics.k * (1 + 1e-12),
                                "k_perp must lie in [0, k]");
  }
  /// (k_z - i s k_perp) / (E + m); modulus k/(E+m) < 1.
  [[nodiscard]] complex lower_prefactor() const {
    const auto& kin = kinematics;
    return complex(kin.k_z, -s * kin.k_perp) / (kin.total_energy + kin.mass);
  }
};

enum class ApproxSign { plus, minus };

using Spinor4 = std::array<complex, 4>;

// ---------------------------------------------------------------------------
// Analytic point evaluation

inline Spinor4 spinor_at(const DiracBeamSpec& spec, double x, double y) {
  const double kr = spec.kinematics.k_perp * std::hypot(x, y);
  const complex a = bessel_j(spec.n, kr) * spinvortex::detail::azimuthal_phase(spec.n, x, y);
  const complex b = bessel_j(spec.n + 1, kr) * spinvortex::detail::azimuthal_phase(spec.n + 1, x, y);
  const complex p = spec.lower_prefactor();
  const double s = spec.s;
  return {a, s * b, p * a, -s * p * b};
}

/// The displayed closed 4-vectors of the approximate L_z states:
///   Psi_n^(+)     = ( e^{in phi} J_n, 0, kz/(E+m) e^{in phi} J_n, i kp/(E+m) e^{i(n+1) phi} J_{n+1} )
///   Psi_{n-1}^(-) = ( 0, e^{in phi} J_n, -i kp/(E+m) e^{i(n-1) phi} J_{n-1}, -kz/(E+m) e^{in phi} J_n )
/// `n` is the approximate L_z eigenvalue in both cases.
inline Spinor4 approx_Lz_closed_form_at(int n, ApproxSign sign, const BeamKinematics& kin, double x, double y) {
  const double kr = kin.k_perp * std::hypot(x, y);
  const double em = kin.total_energy + kin.mass;
  const double az = kin.k_z / em;
  const double ap = kin.k_perp / em;
  auto mode = [&](int m) { return bessel_j(m, kr) * spinvortex::detail::azimuthal_phase(m, x, y); };
  const complex i(0.0, 1.0);
  if (sign == ApproxSign::plus) {
    const complex c0 = mode(n);
    return {c0, 0.0, az * c0, i * ap * mode(n + 1)};
  }
  const complex c1 = mode(n);
  return {0.0, c1, -i * ap * mode(n - 1), -az * c1};
}

/// rho(r) = (1 + kz^2/(E+m)^2) J_1^2(kp r) + kp^2/(E+m)^2 J_0^2(kp r)
inline double central_density(const BeamKinematics& kin, double r) {
  const double em = kin.total_energy + kin.mass;
  const double x = kin.k_perp * r;
  const double j1 = bessel_j(1, x);
  const double j0 = bessel_j(0, x);
  return (1.0 + kin.k_z * kin.k_z / (em * em)) * j1 * j1 + (kin.k_perp * kin.k_perp / (em * em)) * j0 * j0;
}

/// First term only, (1 + kz^2/(E+m)^2) J_1^2(kp r).
inline double central_density_first_term(const BeamKinematics& kin, double r) {
  const double em = kin.total_energy + kin.mass;
  const double j1 = bessel_j(1, kin.k_perp * r);
  return (1.0 + kin.k_z * kin.k_z / (em * em)) * j1 * j1;
}

/// On-axis density k_perp^2 / (E+m)^2 of Psi_{-1}^(+) and Psi_1^(-).
inline double central_fraction(const BeamKinematics& kin) {
  const double b = kin.paraxiality();
  return b * b;
}

// ---------------------------------------------------------------------------
// Grid synthesis

namespace detail {

inline void check_beam(const GridSpec& grid, const BeamKinematics& kin) {
  grid.validate();
  spinvortex::detail::require(kin.k_perp > 0.0, "Bessel beams need k_perp > 0");
  check_sampling(grid, kin.k_perp);
}

} // namespace detail

/// Psi_{n,s} sampled on the grid and multiplied by a smooth radial aperture.
inline Spinor4Field make_dirac_spinor(const DiracBeamSpec& spec, const GridSpec& grid,
                                      std::optional<Aperture> aperture = std::nullopt) {
  spec.validate();
  detail::check_beam(grid, spec.kinematics);
  const Aperture ap = aperture.value_or(Aperture::default_for(grid));
  const double kp = spec.kinematics.k_perp;
  const auto ja = spinvortex::detail::sample_radial(
      grid, [&](double r) { const double w = ap(r); return w == 0.0 ? 0.0 : w * bessel_j(spec.n, kp * r); });
  const auto jb = spinvortex::detail::sample_radial(
      grid, [&](double r) { const double w = ap(r); return w == 0.0 ? 0.0 : w * bessel_j(spec.n + 1, kp * r); });
  const ComplexField a = vortex_from_radial(grid, spec.n, ja);
  const ComplexField b = vortex_from_radial(grid, spec.n + 1, jb);
  const complex p = spec.lower_prefactor();
  const double s = spec.s;
  return Spinor4Field({a, s * b, p * a, (-s * p) * b});
}

/// Default Gaussian ring width for spectral synthesis: the real-space envelope
/// exp(-r^2 width^2 / 2) falls to e^{-32} at the grid edge, unless that would
/// put the ring within 6.5 widths of q = 0.
inline double default_ring_width(const GridSpec& grid, double k_perp) {
  return std::min(8.0 / grid.half_width(), k_perp / 6.5);
}

/// Psi_{n,s} synthesised in momentum space: the cylindrical spinor structure on
/// a Gaussian ring of width `ring_width` about k_perp, every ring point an exact
/// plane-wave solution at fixed E (k_z(q) = sqrt(k^2 - q^2)). Exact J_z and
/// transverse-helicity eigenstate on the grid; unit norm.
inline Spinor4Field make_dirac_spinor_spectral(const DiracBeamSpec& spec, const GridSpec& grid,
                                               std::optional<double> ring_width = std::nullopt) {
  spec.validate();
  detail::check_beam(grid, spec.kinematics);
  const double width = ring_width.value_or(default_ring_width(grid, spec.kinematics.k_perp));
  const auto& kin = spec.kinematics;
  spinvortex::detail::require(width > 0.0, "ring width must be positive");
  if (kin.k_perp < 6.0 * width)
    throw sampling_error("ring width too large for k_perp: the ring would reach zero transverse momentum");

  const GridSpec kg = grid.reciprocal();
  const double em = kin.total_energy + kin.mass;
  const double s = spec.s;
  const complex phase_n = std::polar(1.0, -0.5 * std::numbers::pi * spec.n);       // (-i)^n
  const complex phase_n1 = std::polar(1.0, -0.5 * std::numbers::pi * (spec.n + 1)); // (-i)^{n+1}

  Spinor4Field spec_field(kg);
  for (std::size_t iy = 0; iy < kg.ny; ++iy)
    for (std::size_t ix = 0; ix < kg.nx; ++ix) {
      const double qx = kg.x(ix);
      const double qy = kg.y(iy);
      const double q = std::hypot(qx, qy);
      if (q == 0.0 || q >= kin.k) continue;
      const double amp = std::exp(-0.5 * (q - kin.k_perp) * (q - kin.k_perp) / (width * width));
      if (amp < 1e-300) continue;
      const double theta = std::atan2(qy, qx);
      const complex c1 = amp * phase_n * std::polar(1.0, spec.n * theta);
      const complex c2 = amp * s * phase_n1 * std::polar(1.0, (spec.n + 1) * theta);
      const complex p = complex(std::sqrt(kin.k * kin.k - q * q), -s * q) / em;
      const std::size_t i = kg.index(ix, iy);
      spec_field[0][i] = c1;
      spec_field[1][i] = c2;
      spec_field[2][i] = p * c1;
      spec_field[3][i] = -p * c2;
    }
  auto out = fourier_transform(spec_field, FftDirection::inverse);
  // land exactly on the caller's grid
  std::array<ComplexField, 4> comps;
  for (std::size_t c = 0; c < 4; ++c)
    comps[c] = ComplexField(grid, std::vector<complex>(out[c].values().begin(), out[c].values().end()));
  return normalize(Spinor4Field(std::move(comps)));
}

enum class Synthesis { real_space, spectral_ring };

inline Spinor4Field synthesize(const DiracBeamSpec& spec, const GridSpec& grid, Synthesis mode,
                               std::optional<Aperture> aperture = std::nullopt) {
  return mode == Synthesis::real_space ? make_dirac_spinor(spec, grid, aperture)
                                       : make_dirac_spinor_spectral(spec, grid);
}

/// Psi_n^(+) = (Psi_{n,+1} + Psi_{n,-1}) / 2, or Psi_{n-1}^(-) = (Psi_{n-1,+1} - Psi_{n-1,-1}) / 2.
/// `n` is the approximate L_z value of the result in both cases.
inline Spinor4Field make_approx_Lz_state(int n, ApproxSign sign, const BeamKinematics& kin,
                                         const GridSpec& grid, Synthesis mode = Synthesis::real_space,
                                         std::optional<Aperture> aperture = std::nullopt) {
  const int order = sign == ApproxSign::plus ? n : n - 1;
  const auto plus = synthesize({order, +1, kin}, grid, mode, aperture);
  const auto minus = synthesize({order, -1, kin}, grid, mode, aperture);
  return sign == ApproxSign::plus ? 0.5 * (plus + minus) : 0.5 * (plus - minus);
}

// ---------------------------------------------------------------------------
// Operators

/// 4x4 complex matrix, row-major.
struct Mat4 {
  std::array<complex, 16> m{};
  complex& operator()(int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; }
  const complex& operator()(int r, int c) const { return m[static_cast<std::size_t>(4 * r + c)]; }

  friend Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int k = 0; k < 4; ++k) out(r, c) += a(r, k) * b(k, c);
    return out;
  }
  friend Mat4 operator+(Mat4 a, const Mat4& b) {
    for (std::size_t i = 0; i < 16; ++i) a.m[i] += b.m[i];
    return a;
  }
  friend Mat4 operator*(complex s, Mat4 a) {
    for (auto& v : a.m) v *= s;
    return a;
  }
  [[nodiscard]] Spinor4 apply(const Spinor4& v) const {
    Spinor4 out{};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[static_cast<std::size_t>(r)] += (*this)(r, c) * v[static_cast<std::size_t>(c)];
    return out;
  }
};

/// Dirac (standard) representation.
namespace gamma {

inline Mat4 block(const std::array<complex, 4>& upper_left, const std::array<complex, 4>& upper_right,
                  const std::array<complex, 4>& lower_left, const std::array<complex, 4>& lower_right) {
  Mat4 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const auto k = static_cast<std::size_t>(2 * r + c);
      out(r, c) = upper_left[k];
      out(r, c + 2) = upper_right[k];
      out(r + 2, c) = lower_left[k];
      out(r + 2, c + 2) = lower_right[k];
    }
  return out;
}

inline const std::array<complex, 4> zero{0.0, 0.0, 0.0, 0.0};
inline const std::array<complex, 4> identity{1.0, 0.0, 0.0, 1.0};
inline const std::array<complex, 4> sigma_x{0.0, 1.0, 1.0, 0.0};
inline const std::array<complex, 4> sigma_y{0.0, complex(0, -1), complex(0, 1), 0.0};
inline const std::array<complex, 4> sigma_z{1.0, 0.0, 0.0, -1.0};

inline std::array<complex, 4> neg(std::array<complex, 4> a) {
  for (auto& v : a) v = -v;
  return a;
}

inline Mat4 g0() { return block(identity, zero, zero, neg(identity)); }
inline Mat4 g(const std::array<complex, 4>& sigma) { return block(zero, sigma, neg(sigma), zero); }
inline Mat4 g5() { return block(zero, identity, identity, zero); }
inline Mat4 Sigma(const std::array<complex, 4>& sigma) { return block(sigma, zero, zero, sigma); }

} // namespace gamma

/// Hermitian transverse helicity -i gamma5 gamma3 (Sigma . p_perp)/|p_perp| at
/// momentum direction theta. Eigenvalue s on Psi_{n,s}.
inline Mat4 transverse_helicity_matrix(double theta) {
  using namespace gamma;
  const Mat4 g53 = g5() * g(sigma_z);
  const Mat4 sigma_perp = complex(std::cos(theta)) * Sigma(sigma_x) + complex(std::sin(theta)) * Sigma(sigma_y);
  return complex(0.0, -1.0) * (g53 * sigma_perp);
}

inline OperatorResult<Spinor4Field> apply_Jz_4(const Spinor4Field& field) { return apply_Jz(field, spin_z); }

inline OperatorResult<Spinor4Field> apply_transverse_helicity(const Spinor4Field& field,
                                                              double dc_threshold = 1e-6) {
  const double norm = quadrature_norm(field);
  if (!(norm > 0.0)) throw degenerate_field("transverse helicity of a zero field");
  const auto spectrum = fourier_transform(field, FftDirection::forward);
  const GridSpec kg = spectrum.grid();
  const std::size_t dc = kg.index(kg.nx / 2, kg.ny / 2);

  double smax = 0.0;
  double sdc = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    for (const auto& v : spectrum[c].values()) smax = std::max(smax, std::abs(v));
    sdc = std::max(sdc, std::abs(spectrum[c][dc]));
  }
  if (sdc > dc_threshold * smax)
    throw singular_operator("transverse helicity undefined: field has weight at zero transverse momentum");

  Spinor4Field applied(kg);
  for (std::size_t iy = 0; iy < kg.ny; ++iy)
    for (std::size_t ix = 0; ix < kg.nx; ++ix) {
      const std::size_t i = kg.index(ix, iy);
      if (i == dc) continue;
      const Mat4 h = transverse_helicity_matrix(std::atan2(kg.y(iy), kg.x(ix)));
      const Spinor4 v{spectrum[0][i], spectrum[1][i], spectrum[2][i], spectrum[3][i]};
      const Spinor4 hv = h.apply(v);
      for (std::size_t c = 0; c < 4; ++c) applied[c][i] = hv[c];
    }
  auto back = fourier_transform(applied, FftDirection::inverse);
  std::array<ComplexField, 4> comps;
  for (std::size_t c = 0; c < 4; ++c)
    comps[c] = ComplexField(field.grid(), std::vector<complex>(back[c].values().begin(), back[c].values().end()));
  Spinor4Field out(std::move(comps));
  const double expectation = inner_product(field, out).real() / norm;
  const double residual = eigen_residual(out, field, expectation);
  return {std::move(out), expectation, residual};
}

/// Relative residual ||D Psi|| / ||Psi|| of the Dirac operator
///   D = gamma0 E - gamma3 k_z + i gamma1 d_x + i gamma2 d_y - m
/// (the e^{i(k_z z - E t)} factor substituted analytically), with central
/// differences for d_x, d_y. Norms are taken over pixels within eval_radius
/// (default: where the default aperture window is flat).
inline double dirac_residual(const Spinor4Field& field, const BeamKinematics& kin,
                             std::optional<double> eval_radius = std::nullopt) {
  const auto& grid = field.grid();
  const double radius = eval_radius.value_or(Aperture::default_for(grid).flat_radius());
  spinvortex::detail::require(radius > 0.0, "evaluation radius must be positive");
  const double E = kin.total_energy;
  const double m = kin.mass;
  const double kz = kin.k_z;
  const complex i(0.0, 1.0);

  double res2 = 0.0;
  double psi2 = 0.0;
  for (std::size_t iy = 1; iy + 1 < grid.ny; ++iy)
    for (std::size_t ix = 1; ix + 1 < grid.nx; ++ix) {
      if (std::hypot(grid.x(ix), grid.y(iy)) > radius) continue;
      Spinor4 v{}, ddx{}, ddy{};
      for (std::size_t c = 0; c < 4; ++c) {
        const auto& f = field[c];
        v[c] = f.at(ix, iy);
        ddx[c] = (f.at(ix + 1, iy) - f.at(ix - 1, iy)) / (2.0 * grid.dx);
        ddy[c] = (f.at(ix, iy + 1) - f.at(ix, iy - 1)) / (2.0 * grid.dy);
      }
      // upper u = (v0, v1), lower l = (v2, v3)
      // sigma.grad on a 2-spinor (a, b): (d_x b - i d_y b, d_x a + i d_y a)
      const complex sg_l0 = ddx[3] - i * ddy[3];
      const complex sg_l1 = ddx[2] + i * ddy[2];
      const complex sg_u0 = ddx[1] - i * ddy[1];
      const complex sg_u1 = ddx[0] + i * ddy[0];
      const Spinor4 r{
          (E - m) * v[0] - kz * v[2] + i * sg_l0,
          (E - m) * v[1] + kz * v[3] + i * sg_l1,
          -(E + m) * v[2] + kz * v[0] - i * sg_u0,
          -(E + m) * v[3] - kz * v[1] - i * sg_u1,
      };
      for (std::size_t c = 0; c < 4; ++c) {
        res2 += std::norm(r[c]);
        psi2 += std::norm(v[c]);
      }
    }
  if (!(psi2 > 0.0)) throw degenerate_field("Dirac residual of a field that vanishes in the evaluation region");
  return std::sqrt(res2 / psi2);
}

/// Numeric <L_z>, <Sigma_z/2>, <J_z> of a 4-spinor.
inline AngularMomentumReport angular_momentum(const Spinor4Field& field) {
  return analyze_angular_momentum(field, spin_z);
}

// ---------------------------------------------------------------------------
// Central density and critical radius

enum class CriticalRadiusMethod { paper_formula, numeric_crossing };

inline constexpr double critical_radius_constant = 0.24;

/// r_C = 0.24 sqrt(R) / (kz^2 + m (m + sqrt(kz^2 + m^2)))^{1/4} with R in nm and
/// keV inputs giving nm; returned in natural units.
inline double critical_radius_paper(const BeamKinematics& kin, double vortex_radius_nm) {
  spinvortex::detail::require(vortex_radius_nm > 0.0, "vortex radius must be positive");
  const double kz2 = kin.k_z * kin.k_z;
  const double m = kin.mass;
  const double denom = std::pow(kz2 + m * (m + std::sqrt(kz2 + m * m)), 0.25);
  return nm_to_natural(critical_radius_constant * std::sqrt(vortex_radius_nm) / denom);
}

/// Smallest r > 0 where the J_1^2 term equals the J_0^2 term, by bisection on
/// (0, j_{0,1}/k_perp) to `tolerance` (natural units).
inline double critical_radius_numeric(const BeamKinematics& kin, double tolerance = pm_to_natural(1e-6)) {
  if (!(kin.k_perp > 0.0))
    throw numerical_failure("critical radius undefined for k_perp = 0 (no central density term)");
  const double em = kin.total_energy + kin.mass;
  const double a2 = kin.k_z * kin.k_z / (em * em);
  const double b2 = kin.k_perp * kin.k_perp / (em * em);
  auto excess = [&](double r) {
    const double x = kin.k_perp * r;
    const double j1 = bessel_j(1, x);
    const double j0 = bessel_j(0, x);
    return (1.0 + a2) * j1 * j1 - b2 * j0 * j0;
  };
  double lo = 0.0;
  double hi = bessel_j0_first_zero / kin.k_perp;
  if (!(excess(hi) > 0.0) || !(excess(lo) < 0.0))
    throw numerical_failure("no crossing of the density terms inside the first J_0 lobe");
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Critical radius by either method. `vortex_radius_nm` must be consistent
/// with the kinematics' k_perp (within 5% of either k_perp estimate).
inline double critical_radius(const BeamKinematics& kin, double vortex_radius_nm, CriticalRadiusMethod method) {
  spinvortex::detail::require(vortex_radius_nm > 0.0, "vortex radius must be positive");
  const double k_const = kperp_from_vortex_radius(vortex_radius_nm, KperpEstimate::paper_constant);
  const double k_exact = kperp_from_vortex_radius(vortex_radius_nm, KperpEstimate::exact_maximum);
  const bool consistent = std::abs(kin.k_perp - k_const) <= 0.05 * k_const ||
                          std::abs(kin.k_perp - k_exact) <= 0.05 * k_exact;
  spinvortex::detail::require(consistent, "k_perp inconsistent with the vortex radius");
  return method == CriticalRadiusMethod::paper_formula ? critical_radius_paper(kin, vortex_radius_nm)
                                                       : critical_radius_numeric(kin);
}

struct DensityAnalysis {
  int n_special = -1;
  BeamKinematics kinematics{};
  double vortex_radius_nm = 0.0;
  RadialProfile profile;            ///< full density
  RadialProfile first_term_profile; ///< J_1^2 term only
  double central_fraction = 0.0;
  std::optional<double> r_c_paper;   ///< natural units
  std::optional<double> r_c_numeric; ///< natural units
  std::optional<double> central_area; ///< pi r_c_paper^2, natural units
};

/// Radial density of Psi_{-1}^(+) (n_special = -1) or Psi_1^(-) (n_special = +1)
/// on [0, r_max] with `nbins` points. The two states share the same density.
inline DensityAnalysis density_analysis(int n_special, const BeamKinematics& kin, double r_max, std::size_t nbins,
                                        std::optional<double> vortex_radius_nm = std::nullopt) {
  spinvortex::detail::require(n_special == -1 || n_special == 1, "n_special must be -1 or +1");
  spinvortex::detail::require(r_max > 0.0, "r_max must be positive");
  spinvortex::detail::require(nbins >= 2, "need at least two radial samples");

  DensityAnalysis out;
  out.n_special = n_special;
  out.kinematics = kin;
  for (std::size_t i = 0; i < nbins; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(nbins - 1);
    out.profile.radii.push_back(r);
    out.profile.values.push_back(central_density(kin, r));
    out.first_term_profile.radii.push_back(r);
    out.first_term_profile.values.push_back(central_density_first_term(kin, r));
  }
  out.central_fraction = central_fraction(kin);
  if (kin.k_perp > 0.0) {
    out.vortex_radius_nm = vortex_radius_nm.value_or(vortex_radius_constant / kin.k_perp);
    out.r_c_paper = critical_radius_paper(kin, out.vortex_radius_nm);
    out.r_c_numeric = critical_radius_numeric(kin);
    out.central_area = std::numbers::pi * *out.r_c_paper * *out.r_c_paper;
  }
  return out;
}

} // namespace spinvortex::dirac
