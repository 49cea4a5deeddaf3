// irsim — link-level simulation and learned beamforming for IRS-assisted MISO downlinks
// Copyright (C) 2026 the irsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irsim/harness/config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace irsim::harness {

using nlohmann::json;

namespace {

constexpr double kWaveSpeed = 299792458.0;

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("config: expected [x, y, z] coordinates");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json scenario_to_json_obj(const ScenarioConfig& cfg) {
  const double carrier_freq = kWaveSpeed / cfg.geometry.carrier_wavelength;
  json j;
  j["geometry"] = {
      {"ap_location", vec3_to_json(cfg.geometry.ap_location)},
      {"irs_location", vec3_to_json(cfg.geometry.irs_location)},
      {"num_ap_antennas", cfg.geometry.num_ap_antennas},
      {"irs_rows", cfg.geometry.irs_rows},
      {"irs_cols", cfg.geometry.irs_cols},
      {"carrier_freq_hz", carrier_freq},
      {"element_spacing_wavelengths",
       cfg.geometry.spacing_ap / cfg.geometry.carrier_wavelength}};
  j["mobility"] = {{"speed_min_mps", cfg.mobility.speed_min},
                   {"speed_max_mps", cfg.mobility.speed_max},
                   {"heading_min_rad", cfg.mobility.heading_min},
                   {"heading_max_rad", cfg.mobility.heading_max},
                   {"slot_duration_s", cfg.mobility.slot_duration},
                   {"noise_std_m", cfg.mobility.noise_std}};
  j["channel"] = {{"rician_db", linear_to_db(cfg.rician.rician_ap_irs)},
                  {"pathloss_exp_ap_irs", cfg.rician.pathloss_exp_ap_irs},
                  {"pathloss_exp_user", cfg.rician.pathloss_exp_user},
                  {"ref_pathloss_db", linear_to_db(cfg.rician.ref_pathloss)},
                  {"ref_distance_m", cfg.rician.ref_distance},
                  {"ce_nmse", cfg.ce.nmse}};
  j["budget"] = {{"power_dbm", watts_to_dbm(cfg.power)},
                 {"noise_dbm", watts_to_dbm(cfg.budget.noise_power[0])},
                 {"weights", std::vector<double>(
                                 cfg.budget.weights.data(),
                                 cfg.budget.weights.data() +
                                     cfg.budget.weights.size())}};
  j["service_area"] = {{"x_min", cfg.area.x_min},
                       {"y_min", cfg.area.y_min},
                       {"x_max", cfg.area.x_max},
                       {"y_max", cfg.area.y_max}};
  j["num_users"] = cfg.num_users;
  j["history_len"] = cfg.history_len;
  return j;
}

ScenarioConfig scenario_from_json_obj(const json& j) {
  ScenarioConfig cfg;
  const json& g = j.at("geometry");
  const double carrier_freq = g.at("carrier_freq_hz").get<double>();
  if (carrier_freq <= 0.0)
    throw std::invalid_argument("config: carrier frequency must be > 0");
  const double lambda = kWaveSpeed / carrier_freq;
  const double spacing =
      g.at("element_spacing_wavelengths").get<double>() * lambda;
  cfg.geometry.ap_location = vec3_from_json(g.at("ap_location"));
  cfg.geometry.irs_location = vec3_from_json(g.at("irs_location"));
  cfg.geometry.num_ap_antennas = g.at("num_ap_antennas").get<int>();
  cfg.geometry.irs_rows = g.at("irs_rows").get<int>();
  cfg.geometry.irs_cols = g.at("irs_cols").get<int>();
  cfg.geometry.carrier_wavelength = lambda;
  cfg.geometry.spacing_ap = spacing;
  cfg.geometry.spacing_irs_y = spacing;
  cfg.geometry.spacing_irs_z = spacing;

  const json& m = j.at("mobility");
  cfg.mobility.speed_min = m.at("speed_min_mps").get<double>();
  cfg.mobility.speed_max = m.at("speed_max_mps").get<double>();
  cfg.mobility.heading_min = m.at("heading_min_rad").get<double>();
  cfg.mobility.heading_max = m.at("heading_max_rad").get<double>();
  cfg.mobility.slot_duration = m.at("slot_duration_s").get<double>();
  cfg.mobility.noise_std = m.at("noise_std_m").get<double>();

  cfg.num_users = j.at("num_users").get<int>();
  cfg.history_len = j.at("history_len").get<int>();

  const json& c = j.at("channel");
  cfg.rician.rician_ap_irs = db_to_linear(c.at("rician_db").get<double>());
  cfg.rician.rician_irs_user.assign(static_cast<std::size_t>(cfg.num_users),
                                    cfg.rician.rician_ap_irs);
  cfg.rician.pathloss_exp_ap_irs = c.at("pathloss_exp_ap_irs").get<double>();
  cfg.rician.pathloss_exp_user = c.at("pathloss_exp_user").get<double>();
  cfg.rician.ref_pathloss = db_to_linear(c.at("ref_pathloss_db").get<double>());
  cfg.rician.ref_distance = c.at("ref_distance_m").get<double>();
  cfg.ce.nmse = c.at("ce_nmse").get<double>();

  const json& b = j.at("budget");
  cfg.power = dbm_to_watts(b.at("power_dbm").get<double>());
  const double noise = dbm_to_watts(b.at("noise_dbm").get<double>());
  cfg.budget.noise_power = Eigen::VectorXd::Constant(cfg.num_users, noise);
  const auto weights = b.at("weights").get<std::vector<double>>();
  if (static_cast<int>(weights.size()) != cfg.num_users)
    throw std::invalid_argument("config: weights size != num_users");
  cfg.budget.weights =
      Eigen::Map<const Eigen::VectorXd>(weights.data(), cfg.num_users);

  const json& a = j.at("service_area");
  cfg.area = {a.at("x_min").get<double>(), a.at("y_min").get<double>(),
              a.at("x_max").get<double>(), a.at("y_max").get<double>()};

  cfg.validate();
  return cfg;
}

json experiment_to_json_obj(const ExperimentConfig& cfg) {
  json j;
  j["scenario"] = scenario_to_json_obj(cfg.scenario);
  j["schemes"] = cfg.schemes;
  j["sweep"] = {{"variable", cfg.sweep_variable}, {"values", cfg.sweep_values}};
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["fp"] = {{"tolerance", cfg.fp_tolerance},
             {"max_iterations", cfg.fp_max_iterations}};
  j["stale_lag"] = cfg.stale_lag;
  j["protocol"] = {{"carrier_freq_hz", cfg.protocol.carrier_freq},
                   {"symbol_duration_s", cfg.protocol.symbol_duration},
                   {"avg_speed_kmh", cfg.protocol.avg_speed * 3.6},
                   {"wave_speed_mps", cfg.protocol.wave_speed}};
  j["checkpoints"] = {{"phase", cfg.phase_checkpoint},
                      {"beam", cfg.beam_checkpoint}};
  j["output_dir"] = cfg.output_dir;
  return j;
}

ExperimentConfig experiment_from_json_obj(const json& j) {
  ExperimentConfig cfg;
  cfg.scenario = scenario_from_json_obj(j.at("scenario"));
  cfg.schemes = j.at("schemes").get<std::vector<std::string>>();
  cfg.sweep_variable = j.at("sweep").at("variable").get<std::string>();
  cfg.sweep_values = j.at("sweep").at("values").get<std::vector<double>>();
  cfg.trials = j.at("trials").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.threads = j.value("threads", 1);
  if (j.contains("fp")) {
    cfg.fp_tolerance = j.at("fp").at("tolerance").get<double>();
    cfg.fp_max_iterations = j.at("fp").at("max_iterations").get<int>();
  }
  cfg.stale_lag = j.value("stale_lag", 5);
  if (j.contains("protocol")) {
    const json& p = j.at("protocol");
    cfg.protocol.carrier_freq = p.at("carrier_freq_hz").get<double>();
    cfg.protocol.symbol_duration = p.at("symbol_duration_s").get<double>();
    cfg.protocol.avg_speed = kmh_to_mps(p.at("avg_speed_kmh").get<double>());
    cfg.protocol.wave_speed = p.at("wave_speed_mps").get<double>();
  }
  if (j.contains("checkpoints")) {
    cfg.phase_checkpoint = j.at("checkpoints").value("phase", "");
    cfg.beam_checkpoint = j.at("checkpoints").value("beam", "");
  }
  cfg.output_dir = j.value("output_dir", "out");
  cfg.validate();
  return cfg;
}

}  // namespace

void ExperimentConfig::validate() const {
  scenario.validate();
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
  if (sweep_values.empty())
    throw std::invalid_argument("experiment: sweep values must be non-empty");
  if (schemes.empty())
    throw std::invalid_argument("experiment: scheme list must be non-empty");
  const std::set<std::string> known{kSchemeDlpb, kSchemeFpIcsi, kSchemeNaiveFp,
                                    kSchemeRandomMrt};
  for (const std::string& s : schemes)
    if (!known.count(s))
      throw std::invalid_argument("experiment: unknown scheme " + s);
  const std::set<std::string> axes{"beta_db", "power_dbm", "users",
                                   "velocity_kmh", "tau"};
  if (!axes.count(sweep_variable))
    throw std::invalid_argument("experiment: unknown sweep variable " +
                                sweep_variable);
  if (stale_lag < 1)
    throw std::invalid_argument("experiment: stale_lag must be >= 1");
  if (fp_tolerance <= 0.0 || fp_max_iterations < 1)
    throw std::invalid_argument("experiment: invalid FP options");
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  return scenario_to_json_obj(cfg).dump(2);
}

ScenarioConfig scenario_from_json(const std::string& text) {
  return scenario_from_json_obj(json::parse(text));
}

std::string experiment_to_json(const ExperimentConfig& cfg) {
  return experiment_to_json_obj(cfg).dump(2);
}

ExperimentConfig experiment_from_json(const std::string& text) {
  return experiment_from_json_obj(json::parse(text));
}

ExperimentConfig load_experiment_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return experiment_from_json(ss.str());
}

void save_experiment_file(const ExperimentConfig& cfg,
                          const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("config: cannot open " + path);
  os << experiment_to_json(cfg) << "\n";
  if (!os) throw std::runtime_error("config: write failed for " + path);
}

ExperimentConfig sweep_presets(const std::string& name, bool paper_scale) {
  ExperimentConfig cfg;
  cfg.scenario = paper_scale ? ScenarioConfig::paper() : ScenarioConfig::desk();
  cfg.trials = paper_scale ? 2000 : 200;
  // Protocol accounting uses the 30 km/h midpoint (T_c = 40 ms at 900 MHz).
  cfg.protocol.avg_speed = kmh_to_mps(30.0);
  cfg.protocol.symbol_duration = 66.7e-6;
  cfg.protocol.carrier_freq = 900e6;

  if (name == "beta") {
    cfg.sweep_variable = "beta_db";
    cfg.sweep_values = {-2.0, 2.0, 6.0, 10.0};
    cfg.scenario.power = dbm_to_watts(30.0);
  } else if (name == "power") {
    cfg.sweep_variable = "power_dbm";
    cfg.sweep_values = {10.0, 20.0, 30.0};
    // Velocity range of the protocol-overhead experiments: 20-40 km/h.
    cfg.scenario.mobility.speed_min = kmh_to_mps(20.0);
    cfg.scenario.mobility.speed_max = kmh_to_mps(40.0);
  } else if (name == "users") {
    cfg.sweep_variable = "users";
    cfg.sweep_values = {2.0, 3.0, 4.0, 5.0, 6.0};
  } else if (name == "velocity") {
    cfg.sweep_variable = "velocity_kmh";
    cfg.sweep_values = {10.0, 20.0, 30.0, 40.0, 50.0, 60.0};
  } else if (name == "tau") {
    cfg.sweep_variable = "tau";
    cfg.sweep_values = {1.0, 3.0, 5.0};
  } else {
    throw std::invalid_argument("sweep_presets: unknown preset " + name);
  }
  return cfg;
}

}  // namespace irsim::harness
