// spinvortex: command-line front end.
//
//   spinvortex mask           fork / grating mask (PGM, VFLD, JSON)
//   spinvortex farfield       far field of a scalar or spinor mask (PNG, VFLD, JSON)
//   spinvortex angmom         angular-momentum report (JSON)
//   spinvortex dirac-density  central density of Psi_{-1}^(+) (CSV, JSON, PNG)
//   spinvortex charge         topological charge of a VFLD field
//
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "config_file.hpp"
#include "spinvortex/pauli.hpp"
#include "spinvortex/render.hpp"
#include "spinvortex/report.hpp"
#include "spinvortex/spinvortex.hpp"

namespace fs = std::filesystem;
using namespace spinvortex;
using report::json;

namespace {

constexpr int exit_invalid = 2;
constexpr int exit_numerical = 3;

fs::path with_suffix(const std::string& prefix, const std::string& suffix) {
  fs::path p(prefix + suffix);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << j.dump(2) << '\n';
  else
    report::write(with_suffix(out, ""), j);
}

// ---------------------------------------------------------------------------

struct MaskArgs {
  int n = 1;
  double tilt_fringes = 16;
  std::size_t size = 512;
  double aperture = 0.4; ///< fraction of the grid half-width
  bool binarize = true;
  std::string out = "mask";
};

GridSpec mask_grid(std::size_t size) {
  GridSpec g{size, size, 1.0, 1.0};
  g.validate();
  return g;
}

holography::HologramMask build_mask(const MaskArgs& a) {
  detail::require(a.aperture > 0.0 && a.aperture < 1.0, "aperture must be a fraction of the half-width in (0, 1)");
  const GridSpec g = mask_grid(a.size);
  return holography::synthesize_scalar_mask(a.n, holography::carrier_from_fringes(g, a.tilt_fringes),
                                            a.aperture * g.half_width(), g, a.binarize);
}

int cmd_mask(const MaskArgs& a) {
  const auto mask = build_mask(a);
  // raw |R + T|^2 spans [0, 4]
  std::vector<double> scaled = mask.transmission;
  if (!mask.binary)
    for (auto& v : scaled) v /= 4.0;
  io::write_pgm(with_suffix(a.out, ".pgm"), io::to_gray(mask.grid, scaled));
  io::write_vfld(with_suffix(a.out, ".vfld"), mask.as_field());
  report::write(with_suffix(a.out, ".json"), report::mask_metadata(mask));
  std::cout << "wrote " << a.out << ".{pgm,vfld,json}\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct FarfieldArgs {
  MaskArgs mask;
  std::string mode = "scalar";
  std::string mask_file;
  std::optional<int> target_n;
  // spinor mode
  int h_perp = 1;
  double ring_px = 8.0;
  double c1 = 1.0, c2 = 1.0, c3 = 1.0;
  bool swap = false;
  bool literal_conjugate = false;
  double window_px = 0.0; ///< 0: half the carrier spacing
  std::size_t zoom = 4;
};

/// Centred (2 window + 1)^2 crop, upscaled; brightness relative to `amax` (0: own maximum).
render::Image zoomed(const ComplexField& f, std::size_t window, std::size_t zoom, bool phase, double amax = 0.0) {
  const auto img = phase ? render::phase_image(f, amax) : render::intensity_image(f, amax * amax);
  return render::upscale(render::crop_centre(img, 2 * window + 1, 2 * window + 1), zoom);
}

int farfield_scalar(const FarfieldArgs& a) {
  holography::HologramMask mask;
  if (!a.mask_file.empty()) {
    const auto file = io::read_vfld(a.mask_file);
    if (file.components.size() != 1) throw invalid_input("scalar mask file must have one component");
    mask.grid = file.grid;
    for (const auto& v : file.components[0].values()) mask.transmission.push_back(v.real());
    mask.tilt_kx = holography::carrier_from_fringes(mask.grid, a.mask.tilt_fringes);
    holography::check_tilt(mask.grid, mask.tilt_kx);
    mask.target_n = a.target_n.value_or(0);
    mask.aperture_radius = a.mask.aperture * mask.grid.half_width();
    mask.binary = std::all_of(mask.transmission.begin(), mask.transmission.end(),
                              [](double t) { return t == 0.0 || t == 1.0; });
  } else {
    MaskArgs m = a.mask;
    if (a.target_n) m.n = *a.target_n;
    mask = build_mask(m);
  }
  const double kx = mask.tilt_kx;
  const auto far = holography::reconstruct_far_field(mask, holography::tilted_plane_wave(mask.grid, kx));
  const double window = a.window_px;
  const auto orders = holography::extract_orders(far, {0, 1, 2}, kx, window);

  std::optional<double> overlap;
  if (a.mask_file.empty() || a.target_n)
    overlap = holography::overlap_with_analytic(*orders.find(0), mask, window);

  json j = report::reconstruction(orders, overlap);
  j["mode"] = "scalar";
  j["target_n"] = mask.target_n;
  j["carrier_px"] = holography::carrier_pixels(mask.grid, kx);
  report::write(with_suffix(a.mask.out, "_orders.json"), j);
  io::write_vfld(with_suffix(a.mask.out, "_farfield.vfld"), far);
  render::write_png(with_suffix(a.mask.out, "_intensity.png"), render::intensity_image(far));
  render::write_png(with_suffix(a.mask.out, "_phase.png"), render::phase_image(far));
  const auto w = static_cast<std::size_t>(std::floor(holography::carrier_pixels(mask.grid, kx) / 2.0));
  const auto& lobe = orders.find(0)->field;
  render::write_png(with_suffix(a.mask.out, "_order0.png"),
                    render::hconcat({zoomed(lobe, w, a.zoom, false), zoomed(lobe, w, a.zoom, true)}));
  for (const auto& o : orders.orders)
    std::cout << "order " << o.index << ": charge " << o.charge << " (residual " << o.residual << ")\n";
  if (overlap) std::cout << "overlap with analytic target: " << *overlap << '\n';
  return 0;
}

int farfield_spinor(const FarfieldArgs& a) {
  const GridSpec g = mask_grid(a.mask.size);
  const double kx = holography::carrier_from_fringes(g, a.mask.tilt_fringes);
  holography::check_tilt(g, kx);
  detail::require(a.mask.aperture > 0.0 && a.mask.aperture < 1.0, "aperture must be a fraction in (0, 1)");
  detail::require(a.ring_px > 0.0, "ring radius must be positive");
  const int n = a.target_n.value_or(1);

  // Bessel target whose far-field ring sits ring_px pixels from the lobe centre
  const double k_perp = a.ring_px * g.reciprocal().dx;
  const auto kin = kinematics_from_voltage(200.0, k_perp);
  const Aperture ap{a.mask.aperture * g.half_width(), 4.0 * g.dx};
  auto target = pauli::make_jz_eigenstate(n, a.h_perp, kin, g, ap);
  double peak = 0.0;
  for (std::size_t c = 0; c < 2; ++c)
    for (const auto& v : target[c].values()) peak = std::max(peak, std::abs(v));
  target *= 1.0 / peak;

  holography::MatrixMaskOptions opt;
  opt.C1 = a.c1;
  opt.C2 = a.c2;
  opt.C3 = a.c3;
  opt.swap_conjugate = a.swap;
  opt.carrier_conjugate = !a.literal_conjugate;
  opt.aperture_radius = ap.radius + 8.0 * ap.taper;
  const auto reference = holography::tilted_reference(g, kx);
  const auto mask = holography::synthesize_matrix_mask(target, reference, opt);
  const auto far = holography::reconstruct_far_field(mask, reference);
  const auto decomposition = holography::pauli_decompose(mask);

  const double window = a.window_px;
  json j = report::document("reconstruction");
  j["mode"] = "spinor";
  j["target"] = {{"n", n}, {"h_perp", a.h_perp}, {"Jz", HalfInteger{2 * n + 1}.str()}, {"ring_px", a.ring_px}};
  j["carrier_px"] = holography::carrier_pixels(g, kx);
  j["carrier_conjugate"] = opt.carrier_conjugate;
  j["orders"] = json::array();
  int exit = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    for (int idx : {0, 1, 2}) {
      json o;
      try {
        o = report::to_json(holography::extract_order(far[c], idx, kx, window));
      } catch (const ambiguous_charge& e) {
        o = {{"index", idx}, {"charge", nullptr}, {"error", e.what()}};
        exit = exit_numerical;
      }
      o["component"] = c == 0 ? "up" : "down";
      j["orders"].push_back(o);
    }
  }
  j["overlap_with_analytic"] = nullptr;
  j["max_hermiticity_defect"] = decomposition.max_hermiticity_defect();
  report::write(with_suffix(a.mask.out, "_orders.json"), j);
  io::write_vfld(with_suffix(a.mask.out, "_matrix.vfld"), std::vector<ComplexField>{mask.a, mask.b, mask.c, mask.d});
  io::write_vfld(with_suffix(a.mask.out, "_farfield.vfld"), far);

  // order-0 panels: up phase, down phase, total intensity, on one brightness scale
  const auto w = static_cast<std::size_t>(std::floor(holography::carrier_pixels(g, kx) / 2.0));
  const long cx = static_cast<long>(g.nx / 2), cy = static_cast<long>(g.ny / 2);
  const auto up = holography::detail::crop_recentre(far[0], cx, cy, static_cast<double>(w));
  const auto down = holography::detail::crop_recentre(far[1], cx, cy, static_cast<double>(w));
  ComplexField total(far.grid());
  double amax = 0.0;
  for (std::size_t i = 0; i < total.size(); ++i) {
    total[i] = std::sqrt(std::norm(up[i]) + std::norm(down[i]));
    amax = std::max(amax, total[i].real());
  }
  render::write_png(with_suffix(a.mask.out, "_panels.png"),
                    render::hconcat({zoomed(up, w, a.zoom, true, amax), zoomed(down, w, a.zoom, true, amax),
                                     zoomed(total, w, a.zoom, false, amax)}));
  render::write_png(with_suffix(a.mask.out, "_intensity.png"), render::intensity_image(total));
  for (const auto& o : j["orders"])
    std::cout << o["component"].get<std::string>() << " order " << o["index"] << ": charge " << o["charge"] << '\n';
  if (exit) std::cerr << "error: order charge ambiguous; see " << a.mask.out << "_orders.json\n";
  return exit;
}

// ---------------------------------------------------------------------------

struct AngmomArgs {
  std::string model = "pauli";
  int n = 1;
  int n_prime = 2;
  double alpha = 1.0;
  int s = 1;
  std::string state = "bessel";
  double kev = 200.0;
  double kperp = 7.4;
  double rmax = 40.0; ///< aperture radius in units of 1/k_perp
  std::size_t size = 512;
  bool helicity = false;
  std::string out;
};

/// Grid of `size` points whose half-width is 1.15 R_max, aperture R_max with a 4 dx taper.
std::pair<GridSpec, Aperture> aperture_grid(std::size_t size, double rmax) {
  const double dx = 2.0 * 1.15 * rmax / static_cast<double>(size);
  GridSpec g{size, size, dx, dx};
  g.validate();
  return {g, Aperture{rmax, 4.0 * dx}};
}

int cmd_angmom(const AngmomArgs& a) {
  detail::require(a.rmax > 0.0, "rmax must be positive");
  const auto kin = kinematics_from_voltage(a.kev, a.kperp);
  detail::require(kin.k_perp > 0.0, "angmom needs k_perp > 0");
  const auto [grid, ap] = aperture_grid(a.size, a.rmax / kin.k_perp);
  json j = report::document("angular_momentum");
  j["model"] = a.model;
  j["kinematics"] = report::to_json(kin);
  j["grid"] = report::to_json(grid);
  j["aperture_radius_over_kperp"] = a.rmax;

  if (a.model == "pauli") {
    pauli::PauliBeamSpec spec{a.n, a.n_prime, a.alpha, kin, std::nullopt, std::nullopt, ap};
    j["spec"] = {{"n", a.n}, {"n_prime", a.n_prime}, {"alpha", a.alpha}};
    j["closed_form"] = report::to_json(pauli::angular_momentum_closed_form(spec));
    j["numeric"] = report::to_json(pauli::angular_momentum_numeric(pauli::make_general(spec, grid)));
  } else if (a.model == "dirac") {
    Spinor4Field f;
    if (a.state == "bessel") {
      f = dirac::make_dirac_spinor_spectral({a.n, a.s, kin}, grid);
    } else if (a.state == "approx-plus" || a.state == "approx-minus") {
      const auto sign = a.state == "approx-plus" ? dirac::ApproxSign::plus : dirac::ApproxSign::minus;
      f = dirac::make_approx_Lz_state(a.n, sign, kin, grid, dirac::Synthesis::spectral_ring);
    } else if (a.state == "gaussian") {
      f = Spinor4Field(grid);
      f[0] = make_scalar_vortex(grid, 0, GaussianRadial{0.25 * a.rmax / kin.k_perp});
    } else {
      throw invalid_input("unknown Dirac state '" + a.state + "'");
    }
    j["spec"] = {{"state", a.state}, {"n", a.n}, {"s", a.s}};
    j["numeric"] = report::to_json(dirac::angular_momentum(f));
    if (a.helicity) {
      const auto h = dirac::apply_transverse_helicity(f);
      j["transverse_helicity"] = {{"expectation", h.expectation}, {"residual", h.eigen_residual}};
    }
  } else {
    throw invalid_input("model must be 'pauli' or 'dirac'");
  }
  emit(j, a.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct DensityArgs {
  double kev = 200.0;
  std::optional<double> radius_nm;
  std::optional<double> kperp;
  std::string estimate = "paper";
  int n_special = -1;
  double rmax_pm = 100.0;
  std::size_t nbins = 2001;
  bool plot = false;
  std::string out = "density";
};

int cmd_dirac_density(const DensityArgs& a) {
  detail::require(a.radius_nm || a.kperp, "give --radius-nm or --kperp");
  detail::require(a.estimate == "paper" || a.estimate == "exact", "estimate must be 'paper' or 'exact'");
  const auto mode = a.estimate == "paper" ? KperpEstimate::paper_constant : KperpEstimate::exact_maximum;
  const double kp = a.kperp ? *a.kperp : kperp_from_vortex_radius(*a.radius_nm, mode);
  const auto kin = kinematics_from_voltage(a.kev, kp);
  const auto d = dirac::density_analysis(a.n_special, kin, pm_to_natural(a.rmax_pm), a.nbins,
                                         kp > 0.0 ? a.radius_nm : std::nullopt);

  std::vector<double> r_pm;
  for (double r : d.profile.radii) r_pm.push_back(natural_to_pm(r));
  io::write_csv(with_suffix(a.out, ".csv"), {"r_pm", "rho_full", "rho_first_term"},
                {r_pm, d.profile.values, d.first_term_profile.values});
  json j = report::density_summary(d);
  j["kperp_estimate"] = a.kperp ? "given" : a.estimate;
  report::write(with_suffix(a.out, ".json"), j);

  if (a.plot) {
    // inset: the core where the J_0^2 term competes, out to twice the crossing radius
    const double inset = d.r_c_numeric ? 2.0 * natural_to_pm(*d.r_c_numeric) : 0.05 * a.rmax_pm;
    // resample the core finely so the inset is not a handful of mesh points
    const auto core = dirac::density_analysis(a.n_special, kin, pm_to_natural(inset), 201);
    render::Series full{{}, {}, {30, 30, 200}, false};
    render::Series first{{}, {}, {200, 30, 30}, true};
    for (std::size_t i = 0; i < core.profile.radii.size(); ++i) {
      full.x.push_back(natural_to_pm(core.profile.radii[i]));
      full.y.push_back(core.profile.values[i]);
      first.y.push_back(core.first_term_profile.values[i]);
    }
    for (std::size_t i = 0; i < r_pm.size(); ++i) {
      if (r_pm[i] <= inset) continue;
      full.x.push_back(r_pm[i]);
      full.y.push_back(d.profile.values[i]);
      first.y.push_back(d.first_term_profile.values[i]);
    }
    first.x = full.x;
    render::write_png(with_suffix(a.out, ".png"), render::profile_plot({full, first}, inset));
  }
  std::cout << "central_fraction " << d.central_fraction << '\n';
  if (d.r_c_paper) {
    std::cout << "r_c (closed form) " << natural_to_pm(*d.r_c_paper) << " pm\n"
              << "r_c (crossing)    " << natural_to_pm(*d.r_c_numeric) << " pm\n";
  } else {
    std::cout << "r_c undefined for k_perp = 0\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ChargeArgs {
  std::string field;
  std::size_t component = 0;
  std::optional<double> loop_px;
  std::string out;
};

int cmd_charge(const ChargeArgs& a) {
  const auto file = io::read_vfld(a.field);
  detail::require(a.component < file.components.size(), "component index out of range");
  const auto& f = file.components[a.component];
  const double loop_px = a.loop_px.value_or(holography::detail::brightest_ring_px(f, 0.45 * static_cast<double>(std::min(file.grid.nx, file.grid.ny))));
  const auto m = topological_charge(f, loop_px * std::min(file.grid.dx, file.grid.dy));
  json j = report::document("charge");
  j["file"] = a.field;
  j["component"] = a.component;
  j["loop_radius_px"] = loop_px;
  j["charge"] = m.charge;
  j["winding"] = m.winding;
  j["residual"] = m.residual();
  emit(j, a.out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-polarized vortex beams: masks, far fields, angular momentum, Dirac densities"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "spinvortex 0.1.0");

  MaskArgs mask;
  auto* sub_mask = app.add_subcommand("mask", "Write a fork (or plain grating) hologram mask");
  auto add_mask_options = [](CLI::App* s, MaskArgs& m) {
    s->add_option("--n", m.n, "Target topological charge")->capture_default_str();
    s->add_option("--tilt-fringes", m.tilt_fringes, "Reference tilt, fringes across the grid")->capture_default_str();
    s->add_option("--size", m.size, "Grid size (square)")->capture_default_str();
    s->add_option("--aperture", m.aperture, "Aperture radius as a fraction of the half-width")->capture_default_str();
    s->add_option("--binarize", m.binarize, "Threshold at the in-aperture median")->capture_default_str();
    s->add_option("--out", m.out, "Output path prefix")->capture_default_str();
  };
  add_mask_options(sub_mask, mask);

  FarfieldArgs ff;
  auto* sub_ff = app.add_subcommand("farfield", "Far field of a mask illuminated by its reference wave");
  sub_ff->add_option("--n", ff.target_n, "Target charge (scalar) or J_z = n + 1/2 (spinor)");
  sub_ff->add_option("--tilt-fringes", ff.mask.tilt_fringes, "Reference tilt, fringes across the grid")->capture_default_str();
  sub_ff->add_option("--size", ff.mask.size, "Grid size (square)")->capture_default_str();
  sub_ff->add_option("--aperture", ff.mask.aperture, "Aperture radius as a fraction of the half-width")->capture_default_str();
  sub_ff->add_option("--binarize", ff.mask.binarize, "Binarize the scalar mask")->capture_default_str();
  sub_ff->add_option("--out", ff.mask.out, "Output path prefix")->capture_default_str();
  sub_ff->add_option("--mode", ff.mode, "scalar or spinor")->check(CLI::IsMember({"scalar", "spinor"}))->capture_default_str();
  sub_ff->add_option("--mask", ff.mask_file, "Scalar mask VFLD (instead of synthesising one)");
  sub_ff->add_option("--h-perp", ff.h_perp, "Spinor target transverse-helicity label")->check(CLI::IsMember({-1, 1}))->capture_default_str();
  sub_ff->add_option("--ring-px", ff.ring_px, "Far-field ring radius of the Bessel target, pixels")->capture_default_str();
  sub_ff->add_option("--c1", ff.c1, "Reference coefficient")->capture_default_str();
  sub_ff->add_option("--c2", ff.c2, "Target coefficient")->capture_default_str();
  sub_ff->add_option("--c3", ff.c3, "Conjugate coefficient")->capture_default_str();
  sub_ff->add_option("--swap", ff.swap, "Swap up/down in the conjugate term")->capture_default_str();
  sub_ff->add_option("--literal-conjugate", ff.literal_conjugate,
                     "Leave the conjugate term untilted (it then overlaps the target)")->capture_default_str();
  sub_ff->add_option("--window-px", ff.window_px, "Order window radius, pixels (0: half the carrier)")->capture_default_str();
  sub_ff->add_option("--zoom", ff.zoom, "Upscale factor of the order-0 panels")->capture_default_str();

  AngmomArgs am;
  auto* sub_am = app.add_subcommand("angmom", "Angular-momentum report, closed form and quadrature");
  sub_am->add_option("--model", am.model, "pauli or dirac")->capture_default_str();
  sub_am->add_option("--n", am.n, "OAM of the up component (Dirac: Bessel order)")->capture_default_str();
  sub_am->add_option("--n-prime", am.n_prime, "OAM of the down component")->capture_default_str();
  sub_am->add_option("--alpha", am.alpha, "Down/up amplitude ratio")->capture_default_str();
  sub_am->add_option("--s", am.s, "Dirac transverse-helicity label")->check(CLI::IsMember({-1, 1}))->capture_default_str();
  sub_am->add_option("--state", am.state, "Dirac state: bessel, approx-plus, approx-minus, gaussian")->capture_default_str();
  sub_am->add_option("--kev", am.kev, "Kinetic energy, keV")->capture_default_str();
  sub_am->add_option("--kperp", am.kperp, "Transverse momentum, keV")->capture_default_str();
  sub_am->add_option("--rmax", am.rmax, "Aperture radius in units of 1/k_perp")->capture_default_str();
  sub_am->add_option("--size", am.size, "Grid size (square)")->capture_default_str();
  sub_am->add_option("--helicity", am.helicity, "Also apply the transverse helicity (Dirac)")->capture_default_str();
  sub_am->add_option("--out", am.out, "JSON output file (default stdout)");

  DensityArgs dd;
  auto* sub_dd = app.add_subcommand("dirac-density", "Central density of the relativistic special states");
  sub_dd->add_option("--kev", dd.kev, "Kinetic energy, keV")->capture_default_str();
  sub_dd->add_option("--radius-nm", dd.radius_nm, "Vortex ring radius R, nm");
  sub_dd->add_option("--kperp", dd.kperp, "Transverse momentum, keV (overrides --radius-nm)");
  sub_dd->add_option("--estimate", dd.estimate, "k_perp from R: paper or exact")->capture_default_str();
  sub_dd->add_option("--n-special", dd.n_special, "-1 for Psi_{-1}^(+), +1 for Psi_1^(-)")->check(CLI::IsMember({-1, 1}))->capture_default_str();
  sub_dd->add_option("--rmax-pm", dd.rmax_pm, "Profile range, pm")->capture_default_str();
  sub_dd->add_option("--nbins", dd.nbins, "Profile samples")->capture_default_str();
  sub_dd->add_option("--plot", dd.plot, "Also write a PNG plot with a central inset")->capture_default_str();
  sub_dd->add_option("--out", dd.out, "Output path prefix")->capture_default_str();

  ChargeArgs ch;
  auto* sub_ch = app.add_subcommand("charge", "Topological charge of a VFLD field about the grid centre");
  sub_ch->add_option("field", ch.field, "VFLD file")->required();
  sub_ch->add_option("--component", ch.component, "Component index")->capture_default_str();
  sub_ch->add_option("--loop-px", ch.loop_px, "Loop radius, pixels (default: brightest ring)");
  sub_ch->add_option("--out", ch.out, "JSON output file (default stdout)");

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = cli::expand_config(args);
  } catch (const cli::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  std::vector<char*> cargs;
  for (auto& s : args) cargs.push_back(s.data());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_invalid;
  }

  try {
    if (*sub_mask) return cmd_mask(mask);
    if (*sub_ff) return ff.mode == "scalar" ? farfield_scalar(ff) : farfield_spinor(ff);
    if (*sub_am) return cmd_angmom(am);
    if (*sub_dd) return cmd_dirac_density(dd);
    if (*sub_ch) return cmd_charge(ch);
  } catch (const invalid_input& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_invalid;
  } catch (const io::io_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const numerical_failure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
