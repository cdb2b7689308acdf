// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spinor_pipeline.hpp"
#include "spinvortex/spinvortex.hpp"

using namespace spinvortex;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Outcome&)> body;
};

const BeamKinematics kin = kinematics_from_voltage(200.0, 7.4);

double rel(double a, double b) { return std::abs(a / b - 1.0); }

double bessel(int n, double x) {
  return n >= 0 ? std::cyl_bessel_j(n, x) : ((-n) % 2 ? -1.0 : 1.0) * std::cyl_bessel_j(-n, x);
}

// 1. k_perp from the vortex radius
void kperp_estimate(Outcome& o) {
  const double R = 0.05;
  const double fixed = kperp_from_vortex_radius(R, KperpEstimate::paper_constant);
  const double exact = kperp_from_vortex_radius(R, KperpEstimate::exact_maximum);
  // brute force: maximise J_1(x)^2 on a 1e-6 mesh, then k_perp = x hbar c / R
  double best_x = 0.0, best = 0.0;
  for (double x = 1e-6; x < 4.0; x += 1e-6) {
    const double v = std::pow(std::cyl_bessel_j(1.0, x), 2);
    if (v > best) best = v, best_x = x;
  }
  const double brute = best_x * constants.hbar_c_kev_nm / R;
  o.detail << "0.37 constant " << fixed << " keV, exact " << exact << " keV, brute force " << brute << " keV";
  o.check(rel(fixed, 7.4) < 0.01, "0.37 constant within 1% of 7.4");
  o.check(rel(exact, brute) < 0.005, "exact maximum within 0.5% of brute force");
  o.check(rel(exact, 7.27) < 0.005, "exact maximum within 0.5% of 7.27");
}

// 2. central density fraction
void central(Outcome& o) {
  const double cf = dirac::central_fraction(kin);
  const double em = kin.total_energy + kin.mass;
  o.detail << "k_perp^2/(E+m)^2 = " << cf;
  o.check(std::abs(cf - 7.4 * 7.4 / (em * em)) < 1e-18, "matches k_perp^2/(E+m)^2");
  o.check(rel(cf, 3.7e-5) < 0.03, "within 3% of 3.7e-5");
}

// 3. critical radius, both methods
void critical(Outcome& o) {
  const double R = 0.05;
  const double closed = natural_to_pm(dirac::critical_radius(kin, R, dirac::CriticalRadiusMethod::paper_formula));
  const double numeric = natural_to_pm(dirac::critical_radius(kin, R, dirac::CriticalRadiusMethod::numeric_crossing));
  // fine mesh scan for the first radius where the J_1^2 term overtakes the J_0^2 term
  const double em = kin.total_energy + kin.mass;
  const double a2 = kin.k_z * kin.k_z / (em * em), b2 = kin.k_perp * kin.k_perp / (em * em);
  double scan = 0.0;
  for (double r_pm = 1e-5; r_pm < 50.0; r_pm += 1e-5) {
    const double x = kin.k_perp * pm_to_natural(r_pm);
    if ((1 + a2) * std::pow(bessel(1, x), 2) >= b2 * std::pow(bessel(0, x), 2)) {
      scan = r_pm;
      break;
    }
  }
  const double ratio = closed / numeric;
  o.detail << "closed form " << closed << " pm, numeric " << numeric << " pm, scan " << scan << " pm, ratio " << ratio;
  o.check(rel(closed, 1.8) < 0.05, "closed form within 5% of 1.8 pm");
  o.check(rel(numeric, scan) < 0.05 && std::abs(numeric - scan) < 2e-5, "numeric crossing agrees with the scan");
  o.check(rel(numeric, 0.30) < 0.05, "numeric crossing within 5% of 0.30 pm");
  o.check(ratio >= 5.0 && ratio <= 7.0, "ratio in [5, 7]");
}

// 4. fork masks and the spinor pipeline at 512^2
void fork_masks(Outcome& o) {
  const GridSpec g{512, 512, 1.0, 1.0};
  const double kx = holography::carrier_from_fringes(g, 16);
  for (int n : {1, 2}) {
    const auto m = holography::synthesize_scalar_mask(n, kx, 0.4 * g.half_width(), g, true);
    const auto far = holography::reconstruct_far_field(m, holography::tilted_plane_wave(g, kx));
    const auto lobe = holography::extract_order(far, 0, kx);
    const double ov = holography::overlap_with_analytic(lobe, m);
    o.detail << "n=" << n << ": charge " << lobe.charge << ", overlap " << ov << "; ";
    o.check(lobe.charge == n, "scalar charge n=" + std::to_string(n));
    o.check(ov > 0.90, "overlap n=" + std::to_string(n));
  }
  const auto run = testing::spinor_fork(1);
  const int up = holography::extract_order(run.farfield[0], 0, run.carrier_kx).charge;
  const int down = holography::extract_order(run.farfield[1], 0, run.carrier_kx).charge;
  o.detail << "spinor J_z=3/2: (" << up << ", " << down << ")";
  o.check(up == 1 && down == 2, "spinor component charges (1, 2)");
}

// 5. radial density curves of the special states
void density_curves(Outcome& o) {
  const double rmax = pm_to_natural(100.0);
  const std::size_t nbins = 201;
  const auto d = dirac::density_analysis(-1, kin, rmax, nbins, 0.05);
  const double gap = d.profile.values.front() - d.first_term_profile.values.front();
  o.check(std::abs(gap - d.central_fraction) < 1e-12, "r=0 gap equals the central fraction");

  // oracle: sum of |component|^2 of the synthesised states on a grid whose
  // +x axis pixels land on the profile radii
  const double dx = rmax / static_cast<double>(nbins - 1);
  const GridSpec g{512, 512, dx, dx};
  const Aperture ap{0.97 * g.half_width(), 2.0 * dx};
  double worst = 0.0;
  std::size_t used = 0;
  for (auto [n, sign] : {std::pair{-1, dirac::ApproxSign::plus}, std::pair{1, dirac::ApproxSign::minus}}) {
    const auto f = dirac::make_approx_Lz_state(n, sign, kin, g, dirac::Synthesis::real_space, ap);
    for (std::size_t i = 0; i < nbins; ++i) {
      const std::size_t ix = g.nx / 2 + i, iy = g.ny / 2;
      if (ix >= g.nx || std::abs(g.x(ix) - d.profile.radii[i]) > 1e-12 * rmax) continue;
      if (d.profile.radii[i] > ap.flat_radius()) continue;
      double rho = 0.0;
      for (std::size_t c = 0; c < 4; ++c) rho += std::norm(f[c].at(ix, iy));
      worst = std::max(worst, std::abs(rho - d.profile.values[i]));
      ++used;
    }
  }
  o.detail << "r=0 gap " << gap << ", central fraction " << d.central_fraction << ", oracle max diff " << worst
           << " over " << used << " points";
  o.check(used > 100, "oracle covers the curve");
  o.check(worst < 1e-12, "component-sum oracle within 1e-12");
}

struct PauliSetup {
  GridSpec grid;
  Aperture ap;
};

PauliSetup pauli_setup(double rmax_units, std::size_t n) {
  const double rmax = rmax_units / kin.k_perp;
  const double dx = 2.0 * 1.15 * rmax / static_cast<double>(n);
  return {GridSpec{n, n, dx, dx}, Aperture{rmax, 4.0 * dx}};
}

double report_error(const AngularMomentumReport& a, const AngularMomentumReport& b) {
  return std::max({std::abs(a.Lz - b.Lz), std::abs(a.Sz - b.Sz), std::abs(a.Jz - b.Jz)});
}

// 6. Pauli angular momentum suite
void pauli_suite(Outcome& o) {
  // Below this the quadrature error is the window tail at the periodic
  // boundary and no longer moves with R_max.
  const double floor = 1e-8;
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> ni(-3, 3);
  std::uniform_real_distribution<double> ai(0.1, 5.0);
  double worst40 = 0.0, worst_sum = 0.0;
  int monotone_bad = 0;
  for (int k = 0; k < 20; ++k) {
    const int n = ni(rng), np = ni(rng);
    const double alpha = ai(rng);
    double prev = 1.0;
    for (double rmax : {20.0, 40.0, 60.0}) {
      const auto [g, ap] = pauli_setup(rmax, 512);
      const pauli::PauliBeamSpec s{n, np, alpha, kin, std::nullopt, std::nullopt, ap};
      const auto num = pauli::angular_momentum_numeric(pauli::make_general(s, g));
      const auto cf = pauli::angular_momentum_closed_form(s);
      const double err = report_error(num, cf);
      if (rmax == 40.0) worst40 = std::max(worst40, err);
      if (err > std::max(prev, floor)) ++monotone_bad;
      prev = err;
      worst_sum = std::max({worst_sum, std::abs(num.Jz - (num.Lz + num.Sz)), std::abs(cf.Jz - (cf.Lz + cf.Sz))});
    }
  }
  double worst_res = 0.0;
  bool eigen_ok = true;
  const auto [g, ap] = pauli_setup(40.0, 256);
  for (int n : {-2, 0, 1})
    for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto r = pauli::angular_momentum_numeric(
          pauli::make_general({n, n + 1, alpha, kin, std::nullopt, std::nullopt, ap}, g));
      worst_res = std::max(worst_res, r.Jz_residual);
      eigen_ok = eigen_ok && r.Jz_eigen && r.Jz_eigen->value() == n + 0.5;
    }
  o.detail << "20 cases: max error at R_max=40/k_perp " << worst40 << ", non-monotone steps " << monotone_bad
           << ", max |J-(L+S)| " << worst_sum << ", max J_z residual " << worst_res;
  o.check(worst40 < 1e-3, "closed form vs quadrature within 1e-3");
  o.check(monotone_bad == 0, "error non-increasing with R_max");
  o.check(worst_sum < 1e-12, "J_z = L_z + S_z within 1e-12");
  o.check(worst_res < 1e-6 && eigen_ok, "J_z eigen-residual below 1e-6 for n' = n + 1");
}

// 7. Dirac verification suite
void dirac_suite(Outcome& o) {
  // fixed physical domain refined by N
  const double L = 64 * 0.6 / kin.k_perp, t = 1.2 / kin.k_perp;
  double rmin = 1e9, rmax = 0.0;
  for (int n = -2; n <= 2; ++n)
    for (int s : {-1, 1}) {
      std::vector<double> res;
      for (std::size_t N : {128u, 256u, 512u}) {
        const double dx = 2 * L / static_cast<double>(N);
        const GridSpec g{N, N, dx, dx};
        res.push_back(dirac::dirac_residual(dirac::make_dirac_spinor({n, s, kin}, g, Aperture{L - 7 * t, t}), kin,
                                            L - 15 * t));
      }
      for (std::size_t i = 1; i < res.size(); ++i) {
        rmin = std::min(rmin, res[i - 1] / res[i]);
        rmax = std::max(rmax, res[i - 1] / res[i]);
      }
    }
  o.check(rmin >= 3.5 && rmax <= 4.5, "residual ratio in [3.5, 4.5]");

  double jz_dev = 0.0, jz_res = 0.0, h_dev = 0.0, h_res = 0.0;
  const auto g512 = grid_for_wavenumber(512, kin.k_perp, 0.3);
  const auto g256 = grid_for_wavenumber(256, kin.k_perp, 0.3);
  for (int n = -2; n <= 2; ++n)
    for (int s : {-1, 1}) {
      const auto j = dirac::apply_Jz_4(dirac::make_dirac_spinor({n, s, kin}, g512));
      jz_dev = std::max(jz_dev, std::abs(j.expectation - (n + 0.5)));
      jz_res = std::max(jz_res, j.eigen_residual);
      const auto h = dirac::apply_transverse_helicity(dirac::make_dirac_spinor_spectral({n, s, kin}, g256));
      h_dev = std::max(h_dev, std::abs(h.expectation - s));
      h_res = std::max(h_res, h.eigen_residual);
    }
  o.check(jz_dev < 1e-9 && jz_res < 1e-6, "J_z eigenvalue n + 1/2, residual below 1e-6");
  o.check(h_dev < 1e-9 && h_res < 1e-5, "helicity eigenvalue s, residual below 1e-5");

  std::vector<double> scaled;
  for (double b : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double kp = b * (200.0 + 2 * 511.0);
    const auto k2 = kinematics_from_voltage(200.0, kp);
    const auto f = dirac::make_approx_Lz_state(1, dirac::ApproxSign::plus, k2, grid_for_wavenumber(256, kp, 0.3));
    scaled.push_back(std::abs(dirac::angular_momentum(f).Lz - 1.0) / (b * b));
  }
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  o.check(*hi / *lo < 1.5, "paraxial L_z deviation / (k_perp/(E+m))^2 constant within 1.5");

  o.detail << "residual ratios [" << rmin << ", " << rmax << "], J_z max dev " << jz_dev << " res " << jz_res
           << ", helicity max dev " << h_dev << " res " << h_res << ", paraxial spread " << *hi / *lo;
}

int run_cli(const std::string& args, const fs::path& dir) {
  const std::string cmd = std::string(SPINVORTEX_CLI) + " " + args + " > " + (dir / "log.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// 8. property checks and CLI determinism
void properties(Outcome& o) {
  std::mt19937 rng(8);
  std::normal_distribution<double> nd(0.0, 1.0);

  double fft_err = 0.0;
  for (std::size_t n : {16u, 64u, 256u}) {
    ComplexField f(GridSpec{n, n, 0.3, 0.3});
    for (auto& v : f.values()) v = {nd(rng), nd(rng)};
    const auto s = fourier_transform(f);
    double a = 0, b = 0;
    for (std::size_t i = 0; i < f.size(); ++i) a += std::norm(f[i]), b += std::norm(s[i]);
    fft_err = std::max(fft_err, std::abs(a - b) / a);
  }
  o.check(fft_err < 1e-10, "FFT unitarity 1e-10");

  std::uniform_int_distribution<int> mi(-4, 4);
  std::uniform_real_distribution<double> wi(3.0, 8.0);
  const GridSpec gc{128, 128, 0.2, 0.2};
  int additive_bad = 0;
  for (int k = 0; k < 20; ++k) {
    const int p = mi(rng), q = mi(rng);
    const auto f = make_scalar_vortex(gc, p, GaussianRadial{wi(rng)});
    const auto h = make_scalar_vortex(gc, q, GaussianRadial{wi(rng)});
    if (topological_charge(f * h, 1.5).charge != p + q) ++additive_bad;
  }
  o.check(additive_bad == 0, "charge additivity");

  const GridSpec gb{512, 512, 1.0, 1.0};
  int binar_bad = 0;
  std::uniform_int_distribution<int> bn(-3, 3);
  for (int k = 0; k < 4; ++k) {
    const int n = bn(rng);
    const double kx = holography::carrier_from_fringes(gb, 32);
    const auto ref = holography::tilted_plane_wave(gb, kx);
    for (bool binary : {false, true}) {
      const auto m = holography::synthesize_scalar_mask(n, kx, 0.4 * gb.half_width(), gb, binary);
      if (holography::extract_order(holography::reconstruct_far_field(m, ref), 0, kx).charge != n) ++binar_bad;
    }
  }
  o.check(binar_bad == 0, "binarisation keeps the charge");

  const GridSpec gp{32, 32, 1.0, 1.0};
  auto rnd = [&] {
    ComplexField f(gp);
    for (auto& v : f.values()) v = {3 * nd(rng), 3 * nd(rng)};
    return f;
  };
  double pauli_err = 0.0;
  for (int k = 0; k < 10; ++k) {
    const holography::MatrixMask m{rnd(), rnd(), rnd(), rnd()};
    const auto back = holography::pauli_decompose(m).reconstruct();
    for (std::size_t i = 0; i < gp.size(); ++i)
      pauli_err = std::max({pauli_err, std::abs(back.a[i] - m.a[i]), std::abs(back.b[i] - m.b[i]),
                            std::abs(back.c[i] - m.c[i]), std::abs(back.d[i] - m.d[i])});
  }
  o.check(pauli_err < 1e-12, "Pauli decomposition round trip 1e-12");

  const fs::path dir = fs::temp_directory_path() / "spinvortex_acceptance";
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
      {"mask --n 2 --size 256 --out %/mask", {"mask.pgm", "mask.vfld", "mask.json"}},
      {"farfield --n 1 --size 256 --out %/ff", {"ff_orders.json", "ff_farfield.vfld", "ff_intensity.png"}},
      {"farfield --mode spinor --n 1 --size 256 --tilt-fringes 12 --ring-px 6 --out %/sp",
       {"sp_orders.json", "sp_matrix.vfld", "sp_panels.png"}},
      {"angmom --n 1 --n-prime 2 --alpha 0.7 --size 256 --out %/am.json", {"am.json"}},
      {"angmom --model dirac --n 1 --s 1 --size 128 --out %/ad.json", {"ad.json"}},
      {"dirac-density --radius-nm 0.05 --plot true --out %/dd", {"dd.csv", "dd.json", "dd.png"}},
      {"charge %/ff_farfield.vfld --out %/ch.json", {"ch.json"}},
  };
  int cli_bad = 0, files = 0;
  for (const auto& [args, outputs] : runs) {
    std::vector<std::string> first;
    for (int pass = 0; pass < 2; ++pass) {
      std::string a = args;
      for (auto at = a.find('%'); at != std::string::npos; at = a.find('%')) a.replace(at, 1, dir.string());
      if (run_cli(a, dir) != 0) {
        ++cli_bad;
        break;
      }
      for (std::size_t i = 0; i < outputs.size(); ++i) {
        const auto bytes = slurp(dir / outputs[i]);
        if (pass == 0)
          first.push_back(bytes);
        else if (bytes.empty() || bytes != first[i])
          ++cli_bad;
        else
          ++files;
      }
    }
  }
  o.check(cli_bad == 0, "CLI outputs byte-identical across runs");
  o.detail << "FFT " << fft_err << ", additivity failures " << additive_bad << ", binarisation failures "
           << binar_bad << ", Pauli round trip " << pauli_err << ", identical CLI outputs " << files;
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "k_perp from vortex radius", 1.0, kperp_estimate},
      {2, "central density fraction", 1.0, central},
      {3, "critical radius", 1.0, critical},
      {4, "fork mask and spinor reconstruction", 30.0, fork_masks},
      {5, "radial density curves", 10.0, density_curves},
      {6, "Pauli angular momentum", 60.0, pauli_suite},
      {7, "Dirac verification", 120.0, dirac_suite},
      {8, "properties and determinism", 60.0, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(dt < c.budget_s, "runtime budget " + std::to_string(c.budget_s) + " s");
    if (!o.ok) ++failed;
    std::printf("%s %d %s (%.2f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), dt, o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
