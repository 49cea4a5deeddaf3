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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irsim/metrics.hpp"
#include "irsim/scenario.hpp"

namespace irsim::harness {

inline constexpr const char* kSchemeDlpb = "dlpb";
inline constexpr const char* kSchemeFpIcsi = "fp_icsi";
inline constexpr const char* kSchemeNaiveFp = "naive_fp";
inline constexpr const char* kSchemeRandomMrt = "random_mrt";

/// One Monte Carlo experiment: a scenario, the schemes to run, a sweep axis,
/// and reproducibility knobs. Sweep values are in configuration units (dB,
/// dBm, km/h, counts); conversion to linear happens when a value is applied.
struct ExperimentConfig {
  ScenarioConfig scenario = ScenarioConfig::desk();
  std::vector<std::string> schemes = {kSchemeDlpb, kSchemeFpIcsi,
                                      kSchemeNaiveFp, kSchemeRandomMrt};
  std::string sweep_variable = "beta_db";  // beta_db | power_dbm | users |
                                           // velocity_kmh | tau
  std::vector<double> sweep_values = {2.0};
  int trials = 200;
  std::uint64_t seed = 1;
  int threads = 1;
  double fp_tolerance = 1e-2;
  int fp_max_iterations = 200;
  int stale_lag = 5;  // tau_0 for the naive FP benchmark
  ProtocolParams protocol;
  std::string phase_checkpoint;  // used by the dlpb scheme
  std::string beam_checkpoint;
  std::string output_dir = "out";

  void validate() const;
};

// JSON (de)serialization. dB/dBm/km/h fields in the text form are converted
// to linear units on parse; serialization converts back so a config echo can
// always be re-parsed.
std::string scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const std::string& json);
std::string experiment_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json(const std::string& json);

ExperimentConfig load_experiment_file(const std::string& path);
void save_experiment_file(const ExperimentConfig& cfg,
                          const std::string& path);

/// Figure-protocol presets: "beta", "power", "users", "velocity", "tau".
/// Desk scale by default; `paper_scale` switches to the full-size setting
/// (10x10 IRS, 6 antennas, 2000 trials). Throws std::invalid_argument for an
/// unknown name.
ExperimentConfig sweep_presets(const std::string& name,
                               bool paper_scale = false);

}  // namespace irsim::harness
