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

#include <functional>
#include <string>
#include <vector>

#include "irsim/harness/config.hpp"
#include "irsim/nn/ia_fnn.hpp"
#include "irsim/nn/lacl_gnn.hpp"

namespace irsim::harness {

struct TrialResult {
  std::string scheme;
  double sweep_value = 0.0;
  int trial = 0;
  double wsr = 0.0;
  double protocol_wsr = 0.0;
  std::vector<double> sinr;  // per user
  int solver_iterations = 0;
  double wall_time_s = 0.0;  // informational; never written to result files
};

struct CellStats {
  std::string scheme;
  double sweep_value = 0.0;
  int trials = 0;
  double mean_wsr = 0.0;
  double stderr_wsr = 0.0;
  double mean_protocol_wsr = 0.0;
  double stderr_protocol_wsr = 0.0;
};

struct ResultTable {
  std::vector<TrialResult> rows;

  /// Per (scheme, sweep value) means and standard errors, in first-appearance
  /// row order.
  std::vector<CellStats> summarize() const;

  const CellStats* find_cell(const std::vector<CellStats>& cells,
                             const std::string& scheme,
                             double sweep_value) const;
};

/// Networks serving the dlpb scheme at one sweep index.
struct DlpbNets {
  const nn::LaClGnn* phase = nullptr;
  const nn::IaFnn* beam = nullptr;
};
using DlpbProvider = std::function<DlpbNets(int sweep_index)>;

/// Returns a copy of the scenario with one sweep axis applied. Values are in
/// configuration units: beta_db (dB), power_dbm (dBm), users/tau (counts),
/// velocity_kmh (km/h, sets speed_min = speed_max = v).
ScenarioConfig apply_sweep_value(const ScenarioConfig& scenario,
                                 const std::string& variable, double value);

/// Runs every (sweep value, trial, scheme) cell. Each trial draws from a
/// stream derived from (seed, sweep index, trial index), and rows are stored
/// in (sweep, trial, scheme) order, so results are byte-identical for any
/// thread count. When the dlpb scheme is requested and no provider is given,
/// checkpoints are loaded from the config paths ("{tau}" in a path is
/// replaced by the sweep value on the tau axis); a missing checkpoint raises
/// std::runtime_error.
ResultTable run_monte_carlo(const ExperimentConfig& cfg,
                            const DlpbProvider& provider = {});

/// Evaluates one trained checkpoint pair at several user counts without any
/// retraining or parameter reshaping; any structural failure propagates as an
/// exception.
ResultTable scalability_eval(const ExperimentConfig& base,
                             const nn::LaClGnn& phase_net,
                             const nn::IaFnn& beam_net,
                             const std::vector<int>& k_values);

}  // namespace irsim::harness
