#pragma once

// Physical constants and relativistic kinematics. Everything internal is in
// natural units (hbar = c = 1): energies and momenta in keV, lengths in 1/keV.
// Conversion to nm/pm happens only at I/O boundaries.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "errors.hpp"
#include "special.hpp"

namespace spinvortex {

struct PhysicalConstants {
  double electron_mass_kev = 511.0;
  double hbar_c_kev_nm = 0.1973269804;
  /// Only used to label the effective sigma.B map of a matrix mask.
  double bohr_magneton = 1.0;
};

inline constexpr PhysicalConstants constants{};

inline constexpr double electron_mass = constants.electron_mass_kev;
inline constexpr double neutron_mass = 939565.42052;

// Length conversions between natural units (1/keV) and nm / pm.
inline constexpr double nm_to_natural(double nm) { return nm / constants.hbar_c_kev_nm; }
inline constexpr double natural_to_nm(double len) { return len * constants.hbar_c_kev_nm; }
inline constexpr double pm_to_natural(double pm) { return nm_to_natural(pm * 1e-3); }
inline constexpr double natural_to_pm(double len) { return natural_to_nm(len) * 1e3; }

struct BeamKinematics {
  double mass = electron_mass;  ///< rest mass m (keV)
  double kinetic_energy = 0.0;  ///< E - m (keV)
  double total_energy = electron_mass;
  double k = 0.0;      ///< total momentum (keV)
  double k_z = 0.0;    ///< longitudinal momentum (keV)
  double k_perp = 0.0; ///< transverse momentum (keV)

  /// k_perp / (E + m); governs every relativistic spin-coupling amplitude.
  [[nodiscard]] double paraxiality() const { return k_perp / (total_energy + mass); }
};

/// Kinematics of a beam of given kinetic energy with a prescribed transverse
/// momentum, from E = m + KE, k^2 = E^2 - m^2 = k_z^2 + k_perp^2.
inline BeamKinematics kinematics_from_voltage(double kinetic_energy, double k_perp,
                                              double mass = electron_mass) {
  detail::require(std::isfinite(mass) && mass > 0.0, "particle mass must be positive");
  detail::require(std::isfinite(kinetic_energy) && kinetic_energy >= 0.0,
                  "kinetic energy must be non-negative");
  detail::require(std::isfinite(k_perp) && k_perp >= 0.0, "k_perp must be non-negative");

  BeamKinematics kin;
  kin.mass = mass;
  kin.kinetic_energy = kinetic_energy;
  kin.total_energy = mass + kinetic_energy;
  // (E - m)(E + m) avoids cancellation at low kinetic energy
  kin.k = std::sqrt(kinetic_energy * (kin.total_energy + mass));
  if (k_perp > kin.k) {
    throw invalid_input("k_perp " + std::to_string(k_perp) + " keV exceeds total momentum " +
                        std::to_string(kin.k) + " keV (evanescent beam)");
  }
  kin.k_perp = k_perp;
  kin.k_z = std::sqrt((kin.k - k_perp) * (kin.k + k_perp));
  return kin;
}

/// Kinematics from an opening angle theta0 of the Bessel cone (k_perp = k sin theta0).
inline BeamKinematics kinematics_from_angle(double kinetic_energy, double theta0,
                                            double mass = electron_mass) {
  detail::require(theta0 >= 0.0 && theta0 < std::numbers::pi / 2, "theta0 must lie in [0, pi/2)");
  const auto axial = kinematics_from_voltage(kinetic_energy, 0.0, mass);
  auto kin = axial;
  kin.k_perp = axial.k * std::sin(theta0);
  kin.k_z = axial.k * std::cos(theta0);
  return kin;
}

/// (k_z, k_perp) = (k cos theta0, k sin theta0).
inline std::pair<double, double> angle_parametrization(double theta0, double k) {
  detail::require(theta0 >= 0.0 && theta0 < std::numbers::pi / 2, "theta0 must lie in [0, pi/2)");
  return {k * std::cos(theta0), k * std::sin(theta0)};
}

enum class KperpEstimate {
  paper_constant, ///< 0.37 / R
  exact_maximum,  ///< j'_{1,1} hbar c / R, from the first maximum of J_1^2
};

inline constexpr double vortex_radius_constant = 0.37; // keV nm

/// Transverse momentum (keV) of a single-k_perp vortex whose J_1^2 ring peaks at R (nm).
inline double kperp_from_vortex_radius(double radius_nm,
                                       KperpEstimate mode = KperpEstimate::paper_constant) {
  detail::require(std::isfinite(radius_nm) && radius_nm > 0.0, "vortex radius must be positive");
  switch (mode) {
  case KperpEstimate::paper_constant:
    return vortex_radius_constant / radius_nm;
  case KperpEstimate::exact_maximum:
    return bessel_j1_first_maximum() * constants.hbar_c_kev_nm / radius_nm;
  }
  return 0.0;
}

} // namespace spinvortex
