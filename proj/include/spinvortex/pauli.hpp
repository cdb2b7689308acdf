#pragma once

// Two-component (Pauli) Bessel vortex spinors in the field-free case, and
// their angular-momentum content.
//
// Every constructor normalises each spin component over the aperture before
// weighting, so the component weights 1/(1+alpha^2), alpha^2/(1+alpha^2) hold
// exactly on the grid and numeric reports differ from the closed forms only by
// operator discretisation error.

#include <cmath>
#include <optional>

#include "angular_momentum.hpp"
#include "field_ops.hpp"
#include "units.hpp"

namespace spinvortex::pauli {

inline constexpr std::array<double, 2> spin_z{+0.5, -0.5};

enum class Spin { up, down };

struct PauliBeamSpec {
  int n = 0;       ///< OAM of the spin-up component
  int n_prime = 0; ///< OAM of the spin-down component
  double alpha = 1.0; ///< down/up amplitude ratio, >= 0
  BeamKinematics kinematics{};
  /// Radial profiles; default to J_n and J_{n'} at k_perp.
  std::optional<RadialSpec> f;
  std::optional<RadialSpec> g;
  std::optional<Aperture> aperture;

  void validate() const {
    spinvortex::detail::require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be a finite non-negative real");
  }
  [[nodiscard]] double up_weight() const { return 1.0 / (1.0 + alpha * alpha); }
  [[nodiscard]] double down_weight() const { return alpha * alpha / (1.0 + alpha * alpha); }
};

namespace detail {

inline ComplexField unit_component(const GridSpec& grid, int m, const RadialSpec& radial) {
  return normalize(make_scalar_vortex(grid, m, radial));
}

inline RadialSpec bessel(const BeamKinematics& kin, int order, const std::optional<Aperture>& ap) {
  return BesselRadial{kin.k_perp, order, ap};
}

inline void check_beam(const GridSpec& grid, const BeamKinematics& kin) {
  grid.validate();
  spinvortex::detail::require(kin.k_perp > 0.0, "Bessel beams need k_perp > 0");
  check_sampling(grid, kin.k_perp);
}

} // namespace detail

/// Psi_n^{+/-}: e^{i n phi} J_n(k_perp rho) in the up (down) component only.
inline Spinor2Field make_spin_eigenstate(int n, Spin spin, const BeamKinematics& kin, const GridSpec& grid,
                                         std::optional<Aperture> aperture = std::nullopt) {
  detail::check_beam(grid, kin);
  Spinor2Field out(grid);
  out[spin == Spin::up ? 0 : 1] = detail::unit_component(grid, n, detail::bessel(kin, n, aperture));
  return out;
}

/// J_z = n + 1/2 eigenstate (e^{i n phi} J_n, h e^{i(n+1) phi} J_{n+1}) / sqrt 2,
/// h = +-1 the transverse-helicity label.
inline Spinor2Field make_jz_eigenstate(int n, int h_perp, const BeamKinematics& kin, const GridSpec& grid,
                                       std::optional<Aperture> aperture = std::nullopt) {
  spinvortex::detail::require(h_perp == 1 || h_perp == -1, "h_perp must be +1 or -1");
  detail::check_beam(grid, kin);
  const double w = 1.0 / std::sqrt(2.0);
  Spinor2Field out(grid);
  out[0] = w * detail::unit_component(grid, n, detail::bessel(kin, n, aperture));
  out[1] = (w * h_perp) * detail::unit_component(grid, n + 1, detail::bessel(kin, n + 1, aperture));
  return out;
}

/// General spinor (e^{i n phi} f / sqrt(1+a^2), a e^{i n' phi} g / sqrt(1+a^2)).
inline Spinor2Field make_general(const PauliBeamSpec& spec, const GridSpec& grid) {
  spec.validate();
  const bool default_profiles = !spec.f || !spec.g;
  if (default_profiles) detail::check_beam(grid, spec.kinematics);
  const RadialSpec f = spec.f.value_or(detail::bessel(spec.kinematics, spec.n, spec.aperture));
  const RadialSpec g = spec.g.value_or(detail::bessel(spec.kinematics, spec.n_prime, spec.aperture));

  Spinor2Field out(grid);
  out[0] = std::sqrt(spec.up_weight()) * detail::unit_component(grid, spec.n, f);
  if (spec.alpha > 0.0) out[1] = std::sqrt(spec.down_weight()) * detail::unit_component(grid, spec.n_prime, g);
  return out;
}

/// Closed-form expectation values:
///   <L_z> = (n + a^2 n') / (1 + a^2),  <S_z> = (1 - a^2) / (2 (1 + a^2)),  <J_z> = <L_z> + <S_z>.
inline AngularMomentumReport angular_momentum_closed_form(const PauliBeamSpec& spec) {
  spec.validate();
  const double a2 = spec.alpha * spec.alpha;
  AngularMomentumReport rep;
  rep.method = ReportMethod::analytic;
  rep.Lz = (spec.n + a2 * spec.n_prime) / (1.0 + a2);
  rep.Sz = 0.5 * (1.0 - a2) / (1.0 + a2);
  rep.Jz = rep.Lz + rep.Sz;

  const bool pure_up = spec.alpha == 0.0;
  if (spec.n == spec.n_prime || pure_up) rep.Lz_eigen = HalfInteger{2 * spec.n};
  if (pure_up) rep.Sz_eigen = HalfInteger{1};
  if (spec.n_prime == spec.n + 1 || pure_up) rep.Jz_eigen = HalfInteger{2 * spec.n + 1};
  return rep;
}

inline AngularMomentumReport angular_momentum_numeric(const Spinor2Field& field) {
  return analyze_angular_momentum(field, spin_z);
}

} // namespace spinvortex::pauli
