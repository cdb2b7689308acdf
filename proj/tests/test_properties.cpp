#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "spinvortex/holography.hpp"
#include "spinvortex/pauli.hpp"

using namespace spinvortex;

namespace {

ComplexField random_field(const GridSpec& g, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexField f(g);
  for (auto& v : f.values()) v = {n(rng), n(rng)};
  return f;
}

// Sum of a few off-centre Gaussian vortices under a smooth window.
ComplexField random_smooth(const GridSpec& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> m(-3, 3);
  const double hw = g.half_width();
  const Aperture ap{0.6 * hw, 0.08 * hw};
  ComplexField f(g);
  for (int k = 0; k < 4; ++k) {
    const double x0 = 0.2 * hw * u(rng), y0 = 0.2 * hw * u(rng), w = 0.15 * hw * (1.5 + u(rng));
    const int q = m(rng);
    const complex c{u(rng), u(rng)};
    for (std::size_t iy = 0; iy < g.ny; ++iy)
      for (std::size_t ix = 0; ix < g.nx; ++ix) {
        const double x = g.x(ix) - x0, y = g.y(iy) - y0;
        f.at(ix, iy) += c * std::exp(-(x * x + y * y) / (w * w)) * detail::azimuthal_phase(q, x, y);
      }
  }
  for (std::size_t iy = 0; iy < g.ny; ++iy)
    for (std::size_t ix = 0; ix < g.nx; ++ix) f.at(ix, iy) *= ap(std::hypot(g.x(ix), g.y(iy)));
  return f;
}

double rel_diff(const ComplexField& a, const ComplexField& b) {
  return std::sqrt(quadrature_norm(a - b) / quadrature_norm(a));
}

} // namespace

TEST_CASE("FFT is unitary on random fields") {
  std::mt19937 rng(1);
  for (std::size_t n : {16u, 64u, 128u}) {
    const GridSpec g{n, 2 * n, 0.3, 0.7};
    for (int k = 0; k < 5; ++k) {
      const auto f = random_field(g, rng);
      double a = 0, b = 0;
      const auto s = fourier_transform(f);
      for (std::size_t i = 0; i < f.size(); ++i) a += std::norm(f[i]), b += std::norm(s[i]);
      CHECK(std::abs(a - b) / a < 1e-10);
      CHECK(rel_diff(f, fourier_transform(s, FftDirection::inverse)) < 1e-12);
    }
  }
}

TEST_CASE("L_z is linear and Hermitian") {
  std::mt19937 rng(2);
  const GridSpec g{128, 128, 0.5, 0.5};
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 5; ++k) {
    const auto f = random_smooth(g, rng), h = random_smooth(g, rng);
    const complex a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const auto lhs = apply_Lz(a * f + b * h);
    const auto rhs = a * apply_Lz(f) + b * apply_Lz(h);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
      scale = std::max(scale, std::abs(rhs[i]));
    }
    CHECK(worst < 1e-12 * std::max(1.0, scale));
    const complex fh = inner_product(f, apply_Lz(h)), hf = inner_product(h, apply_Lz(f));
    CHECK(std::abs(fh - std::conj(hf)) < 1e-10 * std::max(1.0, std::abs(fh)));
    CHECK(std::abs(inner_product(f, apply_Lz(f)).imag()) < 1e-10 * quadrature_norm(f));
  }
}

TEST_CASE("topological charge is additive on products") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> m(-4, 4);
  std::uniform_real_distribution<double> w(3.0, 8.0);
  const GridSpec g{128, 128, 0.2, 0.2};
  for (int k = 0; k < 20; ++k) {
    const int p = m(rng), q = m(rng);
    const auto f = make_scalar_vortex(g, p, GaussianRadial{w(rng)});
    const auto h = make_scalar_vortex(g, q, GaussianRadial{w(rng)});
    const double loop = 1.5;
    const int cf = topological_charge(f, loop).charge, ch = topological_charge(h, loop).charge;
    CHECK(topological_charge(f * h, loop).charge == cf + ch);
    CHECK(cf + ch == p + q);
  }
}

TEST_CASE("Pauli decomposition round trip on random matrices") {
  std::mt19937 rng(4);
  std::normal_distribution<double> n(0.0, 3.0);
  const GridSpec g{32, 32, 1.0, 1.0};
  auto rnd = [&] {
    ComplexField f(g);
    for (auto& v : f.values()) v = {n(rng), n(rng)};
    return f;
  };
  for (int k = 0; k < 10; ++k) {
    const holography::MatrixMask m{rnd(), rnd(), rnd(), rnd()};
    const auto back = holography::pauli_decompose(m).reconstruct();
    for (std::size_t i = 0; i < g.size(); ++i) {
      REQUIRE(std::abs(back.a[i] - m.a[i]) < 1e-12);
      REQUIRE(std::abs(back.b[i] - m.b[i]) < 1e-12);
      REQUIRE(std::abs(back.c[i] - m.c[i]) < 1e-12);
      REQUIRE(std::abs(back.d[i] - m.d[i]) < 1e-12);
    }
    // a Hermitian matrix has a real Pauli vector and zero defect
    holography::MatrixMask h{ComplexField(g), rnd(), ComplexField(g), ComplexField(g)};
    for (std::size_t i = 0; i < g.size(); ++i) {
      h.a[i] = m.a[i].real();
      h.d[i] = m.d[i].real();
      h.c[i] = std::conj(h.b[i]);
    }
    const auto dh = holography::pauli_decompose(h);
    CHECK(dh.max_hermiticity_defect() < 1e-15);
    for (std::size_t i = 0; i < g.size(); ++i) {
      REQUIRE(std::abs(dh.ax[i].imag()) < 1e-12);
      REQUIRE(std::abs(dh.ay[i].imag()) < 1e-12);
      REQUIRE(std::abs(dh.az[i].imag()) < 1e-12);
    }
  }
}

TEST_CASE("binarisation keeps the first-order charge") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> m(-3, 3);
  std::uniform_int_distribution<int> fr(0, 2);
  const GridSpec g{512, 512, 1.0, 1.0};
  for (int k = 0; k < 6; ++k) {
    const int n = m(rng);
    const double fringes = std::array{24.0, 32.0, 48.0}[fr(rng)];
    const double kx = holography::carrier_from_fringes(g, fringes);
    const auto ref = holography::tilted_plane_wave(g, kx);
    int charges[2];
    for (int b = 0; b < 2; ++b) {
      const auto mask = holography::synthesize_scalar_mask(n, kx, 0.4 * g.half_width(), g, b == 1);
      charges[b] = holography::extract_order(holography::reconstruct_far_field(mask, ref), 0, kx).charge;
    }
    INFO("n = " << n << ", fringes = " << fringes);
    CHECK(charges[0] == charges[1]);
    CHECK(charges[1] == n);
  }
}

TEST_CASE("matrix mask identity for random coefficients") {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const GridSpec g{64, 64, 1.0, 1.0};
  const auto ref = holography::tilted_reference(g, holography::carrier_from_fringes(g, 6));
  for (int k = 0; k < 5; ++k) {
    Spinor2Field target({random_smooth(g, rng), random_smooth(g, rng)});
    holography::MatrixMaskOptions opt{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, k % 2 == 1, false,
                                      std::nullopt};
    const auto out = holography::synthesize_matrix_mask(target, ref, opt).apply(ref);
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t i = 0; i < g.size(); ++i) {
        const complex rhs = opt.C1 * ref[c][i] + opt.C2 * target[c][i] +
                            opt.C3 * std::conj(target[opt.swap_conjugate ? 1 - c : c][i]);
        REQUIRE(std::abs(out[c][i] - rhs) < 1e-12);
      }
  }
}

TEST_CASE("spinor density is non-negative after arithmetic") {
  std::mt19937 rng(7);
  const GridSpec g{64, 64, 0.5, 0.5};
  Spinor2Field a({random_smooth(g, rng), random_smooth(g, rng)}), b({random_smooth(g, rng), random_smooth(g, rng)});
  const auto c = complex(0.3, -2.0) * a - b;
  for (const double v : c.density()) REQUIRE(v >= 0.0);
}
