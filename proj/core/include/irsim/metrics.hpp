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

#include <Eigen/Dense>

#include "irsim/channel.hpp"
#include "irsim/phase.hpp"

namespace irsim {

/// Transmit beamforming matrix W (M x K, one column per user) under an
/// instantaneous power budget P. Construction enforces ||W||_F^2 <= P up to
/// a small tolerance.
class BeamMatrix {
 public:
  static constexpr double kPowerTolerance = 1e-9;

  BeamMatrix(ComplexMatrix w, double power_budget);

  const ComplexMatrix& matrix() const { return w_; }
  double power_budget() const { return power_budget_; }
  double power() const { return w_.squaredNorm(); }
  int num_users() const { return static_cast<int>(w_.cols()); }

 private:
  ComplexMatrix w_;
  double power_budget_;
};

struct LinkBudget {
  Eigen::VectorXd noise_power;  // sigma_k^2, watts
  Eigen::VectorXd weights;      // alpha_k >= 0

  void validate(int num_users) const;
};

/// Quantities entering the coherence-time overhead accounting.
struct ProtocolParams {
  double carrier_freq = 900e6;      // Hz
  double symbol_duration = 66.7e-6; // s
  double avg_speed = 30.0 / 3.6;    // m/s
  double wave_speed = 299792458.0;  // m/s
};

/// Received SINR of user k: |h_k^H w_k|^2 / (sum_{j != k} |h_k^H w_j|^2 +
/// sigma_k^2) with h_k^H = f_k^H diag(c) G.
double sinr(int k, const PhaseConfig& phases, const BeamMatrix& beams,
            const ChannelRealization& channels, const LinkBudget& budget);

/// Weighted sum-rate sum_k alpha_k log2(1 + gamma_k), bits/s/Hz.
double wsr(const Eigen::VectorXd& sinrs, const Eigen::VectorXd& weights);

/// WSR evaluated directly from stacked effective channels (row k = h_k^H).
/// Agrees with wsr over sinr when the rows equal f_k^H diag(c) G.
double wsr_effective(const ComplexMatrix& h_rows, const BeamMatrix& beams,
                     const LinkBudget& budget);

/// Coherence time T_c = 1 / f_m with Doppler f_m = v * f_c / c. Throws
/// std::domain_error for non-positive speed.
double coherence_time(const ProtocolParams& p);

enum class PilotScheme {
  kFullIcsi,    // K*N pilot symbols per coherence interval
  kPredictive,  // K pilot symbols per coherence interval
};

struct ThroughputResult {
  double rate = 0.0;
  bool feasible = true;  // false when pilots exceed the coherence interval
};

/// Scales a rate by the fraction of the coherence interval left for data:
/// (1 - K*N*T_s/T_c) for full-ICSI estimation, (1 - K*T_s/T_c) for the
/// predictive protocol. An overhead fraction >= 1 yields rate 0 with
/// feasible = false.
ThroughputResult protocol_throughput(double rate, int num_users,
                                     int num_irs_elements,
                                     double symbol_duration,
                                     double coherence_time,
                                     PilotScheme scheme);

/// Pilot cost of the predictive protocol relative to full-ICSI estimation:
/// K / (K*N) = 1/N exactly.
double pilot_overhead_ratio(int num_users, int num_irs_elements);

}  // namespace irsim
