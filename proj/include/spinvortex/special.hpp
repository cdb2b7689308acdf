#pragma once

#include <cmath>
#include <cstdlib>

namespace spinvortex {

/// Integer-order Bessel function of the first kind, J_{-n}(x) = (-1)^n J_n(x).
inline double bessel_j(int order, double x) {
  const unsigned n = static_cast<unsigned>(std::abs(order));
  const double value = std::cyl_bessel_j(static_cast<double>(n), x);
  return (order < 0 && (n % 2 == 1)) ? -value : value;
}

/// First positive root of J_0.
inline constexpr double bessel_j0_first_zero = 2.404825557695773;

/// Location of the first maximum of J_1^2 (first zero of J_1'), by bisection on
/// J_1'(x) = J_0(x) - J_1(x)/x over [1, 3].
inline double bessel_j1_first_maximum() {
  static const double root = [] {
    auto derivative = [](double x) { return bessel_j(0, x) - bessel_j(1, x) / x; };
    double lo = 1.0;
    double hi = 3.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (derivative(mid) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

} // namespace spinvortex
