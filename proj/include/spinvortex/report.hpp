#pragma once

// JSON serialisation of reports. Every top-level document carries
// "schema_version"; layouts are documented in docs/formats.md.

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "angular_momentum.hpp"
#include "dirac.hpp"
#include "holography.hpp"
#include "io.hpp"
#include "units.hpp"

namespace spinvortex::report {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline json document(const std::string& kind) {
  json j;
  j["schema_version"] = schema_version;
  j["kind"] = kind;
  return j;
}

inline json to_json(const std::optional<HalfInteger>& h) {
  if (!h) return nullptr;
  return json{{"exact", h->str()}, {"value", h->value()}};
}

inline const char* to_string(ReportMethod m) { return m == ReportMethod::analytic ? "analytic" : "quadrature"; }

inline json to_json(const AngularMomentumReport& r) {
  json j;
  j["Lz"] = r.Lz;
  j["Sz"] = r.Sz;
  j["Jz"] = r.Jz;
  j["Lz_eigen"] = to_json(r.Lz_eigen);
  j["Sz_eigen"] = to_json(r.Sz_eigen);
  j["Jz_eigen"] = to_json(r.Jz_eigen);
  j["method"] = to_string(r.method);
  if (r.method == ReportMethod::quadrature)
    j["residuals"] = {{"Lz", r.Lz_residual}, {"Sz", r.Sz_residual}, {"Jz", r.Jz_residual}};
  return j;
}

inline json to_json(const BeamKinematics& k) {
  return json{{"mass_kev", k.mass},       {"kinetic_energy_kev", k.kinetic_energy},
              {"total_energy_kev", k.total_energy}, {"k_kev", k.k},
              {"k_z_kev", k.k_z},         {"k_perp_kev", k.k_perp},
              {"paraxiality", k.paraxiality()}};
}

inline json to_json(const GridSpec& g) { return json{{"nx", g.nx}, {"ny", g.ny}, {"dx", g.dx}, {"dy", g.dy}}; }

inline json to_json(const holography::ExtractedOrder& o) {
  return json{{"index", o.index},   {"offset_px", o.offset_px},         {"charge", o.charge},
              {"residual", o.residual}, {"loop_radius_px", o.loop_radius_px}};
}

inline json reconstruction(const holography::DiffractionOrders& orders, std::optional<double> overlap) {
  json j = document("reconstruction");
  j["orders"] = json::array();
  for (const auto& o : orders.orders) j["orders"].push_back(to_json(o));
  j["overlap_with_analytic"] = overlap ? json(*overlap) : json(nullptr);
  return j;
}

inline json density_summary(const dirac::DensityAnalysis& d) {
  auto pm = [](const std::optional<double>& v) { return v ? json(natural_to_pm(*v)) : json(nullptr); };
  json j = document("dirac_density");
  j["n_special"] = d.n_special;
  j["central_fraction"] = d.central_fraction;
  j["r_c_paper_pm"] = pm(d.r_c_paper);
  j["r_c_numeric_pm"] = pm(d.r_c_numeric);
  j["central_area_pm2"] = d.central_area ? json(natural_to_pm(natural_to_pm(*d.central_area))) : json(nullptr);
  j["vortex_radius_nm"] = d.r_c_paper ? json(d.vortex_radius_nm) : json(nullptr);
  j["kinematics"] = to_json(d.kinematics);
  return j;
}

inline json mask_metadata(const holography::HologramMask& m) {
  json j = document("mask");
  j["grid"] = to_json(m.grid);
  j["target_n"] = m.target_n;
  j["tilt_kx"] = m.tilt_kx;
  j["carrier_px"] = holography::carrier_pixels(m.grid, m.tilt_kx);
  j["aperture_radius"] = m.aperture_radius;
  j["binary"] = m.binary;
  return j;
}

inline void write(const std::filesystem::path& path, const json& j) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw io::io_error("cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
  if (!f) throw io::io_error("write failed: " + path.string());
}

} // namespace spinvortex::report
