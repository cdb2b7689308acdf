#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

#include "field_ops.hpp"

namespace spinvortex {

/// Exact half-integer value, stored as twice the value.
struct HalfInteger {
  int twice = 0;

  static HalfInteger nearest(double value) { return {static_cast<int>(std::lround(2.0 * value))}; }
  [[nodiscard]] double value() const { return 0.5 * twice; }
  [[nodiscard]] std::string str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
  friend bool operator==(const HalfInteger&, const HalfInteger&) = default;
};

enum class ReportMethod { analytic, quadrature };

inline constexpr double eigen_threshold = 1e-6;

struct AngularMomentumReport {
  double Lz = 0.0;
  double Sz = 0.0;
  double Jz = 0.0;
  std::optional<HalfInteger> Lz_eigen;
  std::optional<HalfInteger> Sz_eigen;
  std::optional<HalfInteger> Jz_eigen;
  ReportMethod method = ReportMethod::analytic;
  // Relative operator residuals ||O psi - <O> psi|| / ||psi||; zero for analytic reports.
  double Lz_residual = 0.0;
  double Sz_residual = 0.0;
  double Jz_residual = 0.0;
};

/// Result of applying a Hermitian operator to a field.
template <class Field>
struct OperatorResult {
  Field applied;
  double expectation = 0.0;
  double eigen_residual = 0.0;
};

/// S_z = diag(spin_z) applied to an N-spinor (e.g. +1/2, -1/2 for Pauli).
template <std::size_t N>
SpinorField<N> apply_spin_z(SpinorField<N> f, const std::array<double, N>& spin_z) {
  for (std::size_t c = 0; c < N; ++c) f[c] *= spin_z[c];
  return f;
}

/// J_z = L_z + S_z with the given per-component spin projections.
template <std::size_t N>
OperatorResult<SpinorField<N>> apply_Jz(const SpinorField<N>& f, const std::array<double, N>& spin_z) {
  const double norm = quadrature_norm(f);
  if (!(norm > 0.0)) throw degenerate_field("J_z of a zero field");
  SpinorField<N> out = apply_Lz(f);
  out += apply_spin_z(f, spin_z);
  const double expectation = inner_product(f, out).real() / norm;
  const double residual = eigen_residual(out, f, expectation);
  return {std::move(out), expectation, residual};
}

/// Numeric L_z / S_z / J_z analysis of an N-spinor.
template <std::size_t N>
AngularMomentumReport analyze_angular_momentum(const SpinorField<N>& f,
                                               const std::array<double, N>& spin_z) {
  const double norm = quadrature_norm(f);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw degenerate_field("angular momentum of a zero field");

  const SpinorField<N> lz = apply_Lz(f);
  const SpinorField<N> sz = apply_spin_z(f, spin_z);

  AngularMomentumReport rep;
  rep.method = ReportMethod::quadrature;
  rep.Lz = inner_product(f, lz).real() / norm;
  double sz_expect = 0.0;
  for (std::size_t c = 0; c < N; ++c) sz_expect += spin_z[c] * quadrature_norm(f[c]);
  rep.Sz = sz_expect / norm;
  rep.Jz = rep.Lz + rep.Sz;

  rep.Lz_residual = eigen_residual(lz, f, rep.Lz);
  rep.Sz_residual = eigen_residual(sz, f, rep.Sz);
  rep.Jz_residual = eigen_residual(lz + sz, f, rep.Jz);
  if (rep.Lz_residual < eigen_threshold) rep.Lz_eigen = HalfInteger::nearest(rep.Lz);
  if (rep.Sz_residual < eigen_threshold) rep.Sz_eigen = HalfInteger::nearest(rep.Sz);
  if (rep.Jz_residual < eigen_threshold) rep.Jz_eigen = HalfInteger::nearest(rep.Jz);
  return rep;
}

} // namespace spinvortex
