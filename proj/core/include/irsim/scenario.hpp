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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "irsim/channel.hpp"
#include "irsim/geometry.hpp"
#include "irsim/metrics.hpp"
#include "irsim/rng.hpp"

namespace irsim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return db_to_linear(dbm) * 1e-3; }
inline double watts_to_dbm(double w) { return linear_to_db(w * 1e3); }
inline double kmh_to_mps(double v) { return v / 3.6; }

/// Rectangular ground-plane region users are dropped into.
struct ServiceArea {
  double x_min = 3.0;
  double y_min = 50.0;
  double x_max = 6.0;
  double y_max = 60.0;

  Vec3 sample(Rng& rng) const {
    return {rng.uniform(x_min, x_max), rng.uniform(y_min, y_max), 0.0};
  }
};

/// Full physical description of one deployment: geometry, mobility, fading,
/// link budget, and estimation quality. All values are linear; dB inputs are
/// converted when configurations are parsed.
struct ScenarioConfig {
  SystemGeometry geometry;
  MobilityParams mobility;
  RicianParams rician;
  LinkBudget budget;
  ServiceArea area;
  double power = 1.0;  // watts
  EstimationModel ce;
  int num_users = 3;
  int history_len = 3;  // tau

  void validate() const {
    geometry.validate();
    mobility.validate();
    budget.validate(num_users);
    if (static_cast<int>(rician.rician_irs_user.size()) != num_users)
      throw std::invalid_argument("scenario: per-user Rician factors missing");
    if (power <= 0.0) throw std::invalid_argument("scenario: power must be > 0");
    if (num_users < 1 || history_len < 1)
      throw std::invalid_argument("scenario: counts must be >= 1");
    if (area.x_min > area.x_max || area.y_min > area.y_max)
      throw std::invalid_argument("scenario: malformed service area");
  }

  /// Resizes the per-user vectors (noise, weights, Rician factors) keeping
  /// the per-user values of user 0.
  void set_num_users(int k) {
    if (k < 1) throw std::invalid_argument("scenario: num_users must be >= 1");
    const double noise = budget.noise_power.size() ? budget.noise_power[0] : 1e-11;
    const double weight = budget.weights.size() ? budget.weights[0] : 1.0;
    const double beta =
        rician.rician_irs_user.empty() ? 1.0 : rician.rician_irs_user[0];
    num_users = k;
    budget.noise_power = Eigen::VectorXd::Constant(k, noise);
    budget.weights = Eigen::VectorXd::Constant(k, weight);
    rician.rician_irs_user.assign(static_cast<std::size_t>(k), beta);
  }

  /// Desk-scale defaults: 4x4 IRS, 4 AP antennas, 3 users, tau = 3.
  static ScenarioConfig desk() {
    ScenarioConfig cfg;
    constexpr double c0 = 299792458.0;
    const double lambda = c0 / 900e6;
    cfg.geometry = {{2.0, 0.0, 20.0}, {0.0, 50.0, 25.0}, 4, 4, 4,
                    lambda,           0.5 * lambda,      0.5 * lambda,
                    0.5 * lambda};
    cfg.mobility = {8.0,
                    10.0,
                    -std::numbers::pi / 18.0,
                    std::numbers::pi / 18.0,
                    0.02,
                    0.1};
    cfg.rician.rician_ap_irs = db_to_linear(2.0);
    cfg.rician.rician_irs_user.assign(3, db_to_linear(2.0));
    cfg.rician.pathloss_exp_ap_irs = 2.2;
    cfg.rician.pathloss_exp_user = 2.8;
    cfg.rician.ref_pathloss = db_to_linear(-30.0);
    cfg.rician.ref_distance = 1.0;
    cfg.budget.noise_power = Eigen::VectorXd::Constant(3, dbm_to_watts(-80.0));
    cfg.budget.weights = Eigen::VectorXd::Ones(3);
    cfg.power = dbm_to_watts(30.0);
    cfg.ce.nmse = 0.1;
    cfg.num_users = 3;
    cfg.history_len = 3;
    return cfg;
  }

  /// Full-size setting: 10x10 IRS, 6 AP antennas, tau = 5.
  static ScenarioConfig paper() {
    ScenarioConfig cfg = desk();
    cfg.geometry.num_ap_antennas = 6;
    cfg.geometry.irs_rows = 10;
    cfg.geometry.irs_cols = 10;
    cfg.history_len = 5;
    return cfg;
  }
};

/// AP-IRS path loss of the scenario's static geometry.
inline double scenario_pathloss_ap_irs(const ScenarioConfig& cfg) {
  return path_loss(distance_ap_irs(cfg.geometry), cfg.rician.pathloss_exp_ap_irs,
                   cfg.rician.ref_pathloss, cfg.rician.ref_distance);
}

/// IRS-user path losses at the given positions.
inline std::vector<double> scenario_pathloss_users(
    const ScenarioConfig& cfg, const std::vector<Vec3>& locs) {
  std::vector<double> out;
  out.reserve(locs.size());
  for (const Vec3& loc : locs)
    out.push_back(path_loss(distance_irs_user(cfg.geometry, loc),
                            cfg.rician.pathloss_exp_user,
                            cfg.rician.ref_pathloss, cfg.rician.ref_distance));
  return out;
}

}  // namespace irsim
