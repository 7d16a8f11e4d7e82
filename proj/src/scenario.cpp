#include "coopsense/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace coopsense {

namespace {
constexpr double kDegenerateRange = 1e-9;  // [m]
}

TruthParams derive_truth(const SceneConfig& config, const Target& target) {
  const Vec2 station1{0.0, 0.0};
  const Vec2 station2{config.baseline, 0.0};

  const Vec2 p1 = target.position - station1;
  const Vec2 p2 = station2 - target.position;
  const double r1 = norm(p1);
  const double r2 = norm(p2);
  if (r1 < kDegenerateRange || r2 < kDegenerateRange) {
    throw std::invalid_argument("derive_truth: target coincides with a station");
  }

  TruthParams t;
  t.r1 = r1;
  t.r2 = r2;
  // Radial projections; the paper defines v1/v2 in prose only, so the unit
  // vectors are pinned here: station1->target for v1, target->station2 for v2.
  t.v1 = dot(target.velocity, {p1.x / r1, p1.y / r1});
  t.v2 = dot(target.velocity, {p2.x / r2, p2.y / r2});
  t.theta = std::acos(std::clamp(p1.x / r1, -1.0, 1.0));
  t.omega_steer = 2.0 * kPi * config.element_spacing * std::cos(t.theta) / config.wavelength;
  t.tau1 = 2.0 * r1 / kSpeedOfLight;
  t.tau2 = (r1 + r2) / kSpeedOfLight;
  t.doppler_active = 2.0 * t.v1 * config.carrier_active / kSpeedOfLight;
  t.doppler_passive = (t.v1 - t.v2) * config.carrier_passive / kSpeedOfLight;
  t.alpha_active = target.reflectivity_active;
  t.alpha_passive = target.reflectivity_passive;
  return t;
}

std::pair<double, double> resolutions(const SceneConfig& config) {
  const double dr = kSpeedOfLight / (2.0 * config.bandwidth());
  const double dv = kSpeedOfLight /
                    (2.0 * config.symbol_period * config.n_symbols * config.carrier_passive);
  return {dr, dv};
}

double doppler_offset_expanded(const SceneConfig& config, const TruthParams& truth) {
  // As-printed expansion; inconsistent with doppler_offset() and kept only
  // so both values can be reported side by side.
  return truth.v1 * (config.carrier_passive - config.carrier_active) / kSpeedOfLight -
         (truth.v1 + truth.v2) * config.carrier_passive / kSpeedOfLight;
}

ValidationReport validate_config(const SceneConfig& c) {
  ValidationReport r;
  auto fail = [&r](const std::string& msg) { r.violations.push_back(msg); };

  if (c.n_subcarriers < 1) fail("subcarrier count below 1");
  if (c.n_symbols < 1) fail("symbol count below 1");
  if (c.n_antennas < 1) fail("antenna count below 1");
  if (c.idft_points < 1) fail("idft_points below 1");
  if (c.dft_points < 1) fail("dft_points below 1");
  if (c.frft_index < 1) fail("frft_index below 1");
  if (c.idft_points < c.n_subcarriers) fail("idft_points below subcarrier count");
  if (c.dft_points < c.n_symbols) fail("dft_points below symbol count");
  if (!(c.subcarrier_spacing > 0.0)) fail("subcarrier spacing not positive");
  if (!(c.symbol_period > 0.0)) fail("symbol period not positive");
  if (!(c.carrier_active > 0.0)) fail("active carrier not positive");
  if (!(c.carrier_passive > 0.0)) fail("passive carrier not positive");
  if (c.carrier_active == c.carrier_passive) fail("carriers must differ for frequency-division separation");
  if (!(c.wavelength > 0.0)) fail("wavelength not positive");
  if (c.element_spacing > c.wavelength / 2.0) fail("ambiguous array spacing");
  if (!(c.element_spacing > 0.0)) fail("element spacing not positive");
  if (!(c.aoa_window > 0.0) || c.aoa_window > kPi) fail("aoa window outside (0, pi]");
  if (!(c.baseline > 0.0)) fail("baseline not positive");
  if (!(c.eps_stability > 0.0)) fail("stability threshold not positive");
  if (!(c.eps_match > 0.0)) fail("match tolerance not positive");
  if (c.offsets.to_var_s2 < 0.0) fail("timing offset variance negative");
  if (c.offsets.cfo_var_hz2 < 0.0) fail("frequency offset variance negative");
  return r;
}

// ---------------------------------------------------------------------------
// Scene files

using nlohmann::json;

namespace {

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
  }
  return v.get<double>();
}

Vec2 vec2_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

Scene parse_scene(const std::string& json_text) {
  json j = json::parse(json_text);
  Scene scene;
  SceneConfig& c = scene.config;

  c.n_subcarriers = j.value("n_subcarriers", c.n_subcarriers);
  c.n_symbols = j.value("n_symbols", c.n_symbols);
  c.subcarrier_spacing = number_or(j, "subcarrier_spacing_hz", c.subcarrier_spacing);
  c.symbol_period = number_or(j, "symbol_period_s", c.symbol_period);
  c.carrier_active = number_or(j, "carrier_active_hz", c.carrier_active);
  c.carrier_passive = number_or(j, "carrier_passive_hz", c.carrier_passive);
  c.n_antennas = j.value("n_antennas", c.n_antennas);
  c.wavelength = number_or(j, "wavelength_m", kSpeedOfLight / c.carrier_active);
  c.element_spacing = number_or(j, "element_spacing_m", c.wavelength / 2.0);
  c.baseline = number_or(j, "baseline_m", c.baseline);
  c.idft_points = j.value("idft_points", c.idft_points);
  c.dft_points = j.value("dft_points", c.dft_points);
  c.frft_index = j.value("frft_index", c.frft_index);
  c.aoa_window = number_or(j, "aoa_window_rad", c.aoa_window);
  c.eps_stability = number_or(j, "eps_stability", c.eps_stability);
  c.eps_match = number_or(j, "eps_match", c.eps_match);
  c.snr_active_db = number_or(j, "snr_active_db", c.snr_active_db);
  c.snr_passive_db = number_or(j, "snr_passive_db", c.snr_passive_db);
  c.seed = j.value("seed", c.seed);
  c.aoa_gating = j.value("aoa_gating", c.aoa_gating);

  if (j.contains("offsets")) {
    const json& o = j.at("offsets");
    const std::string kind = o.value("model", "constant");
    if (kind == "constant") {
      c.offsets.kind = OffsetModel::Kind::Constant;
    } else if (kind == "gaussian") {
      c.offsets.kind = OffsetModel::Kind::Gaussian;
    } else {
      throw std::invalid_argument("unknown offset model: " + kind);
    }
    c.offsets.to_mean_s = number_or(o, "to_mean_s", 0.0);
    c.offsets.to_var_s2 = number_or(o, "to_var_s2", 0.0);
    c.offsets.cfo_mean_hz = number_or(o, "cfo_mean_hz", 0.0);
    c.offsets.cfo_var_hz2 = number_or(o, "cfo_var_hz2", 0.0);
  }

  if (j.contains("targets")) {
    for (const json& tj : j.at("targets")) {
      Target t;
      t.position = vec2_from(tj.at("position_m"));
      t.velocity = vec2_from(tj.at("velocity_ms"));
      if (tj.contains("reflectivity_active")) t.reflectivity_active = complex_from(tj.at("reflectivity_active"));
      if (tj.contains("reflectivity_passive")) t.reflectivity_passive = complex_from(tj.at("reflectivity_passive"));
      scene.targets.push_back(t);
    }
  }
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

void save_scene(const Scene& scene, const std::string& path) {
  const SceneConfig& c = scene.config;
  json j;
  j["n_subcarriers"] = c.n_subcarriers;
  j["n_symbols"] = c.n_symbols;
  j["subcarrier_spacing_hz"] = c.subcarrier_spacing;
  j["symbol_period_s"] = c.symbol_period;
  j["carrier_active_hz"] = c.carrier_active;
  j["carrier_passive_hz"] = c.carrier_passive;
  j["n_antennas"] = c.n_antennas;
  j["wavelength_m"] = c.wavelength;
  j["element_spacing_m"] = c.element_spacing;
  j["baseline_m"] = c.baseline;
  j["idft_points"] = c.idft_points;
  j["dft_points"] = c.dft_points;
  j["frft_index"] = c.frft_index;
  j["aoa_window_rad"] = c.aoa_window;
  j["eps_stability"] = c.eps_stability;
  j["eps_match"] = c.eps_match;
  if (std::isinf(c.snr_active_db)) j["snr_active_db"] = "inf"; else j["snr_active_db"] = c.snr_active_db;
  if (std::isinf(c.snr_passive_db)) j["snr_passive_db"] = "inf"; else j["snr_passive_db"] = c.snr_passive_db;
  j["seed"] = c.seed;
  j["aoa_gating"] = c.aoa_gating;
  j["offsets"] = {
      {"model", c.offsets.kind == OffsetModel::Kind::Constant ? "constant" : "gaussian"},
      {"to_mean_s", c.offsets.to_mean_s},
      {"to_var_s2", c.offsets.to_var_s2},
      {"cfo_mean_hz", c.offsets.cfo_mean_hz},
      {"cfo_var_hz2", c.offsets.cfo_var_hz2},
  };
  j["targets"] = json::array();
  for (const Target& t : scene.targets) {
    j["targets"].push_back({
        {"position_m", {t.position.x, t.position.y}},
        {"velocity_ms", {t.velocity.x, t.velocity.y}},
        {"reflectivity_active", {t.reflectivity_active.real(), t.reflectivity_active.imag()}},
        {"reflectivity_passive", {t.reflectivity_passive.real(), t.reflectivity_passive.imag()}},
    });
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace coopsense
