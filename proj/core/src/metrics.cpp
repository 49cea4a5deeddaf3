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

#include "irsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace irsim {

BeamMatrix::BeamMatrix(ComplexMatrix w, double power_budget)
    : w_(std::move(w)), power_budget_(power_budget) {
  if (power_budget_ <= 0.0)
    throw std::invalid_argument("BeamMatrix: power budget must be > 0");
  if (w_.size() == 0) throw std::invalid_argument("BeamMatrix: empty matrix");
  if (w_.squaredNorm() > power_budget_ + kPowerTolerance)
    throw std::invalid_argument("BeamMatrix: power budget exceeded");
}

void LinkBudget::validate(int num_users) const {
  if (noise_power.size() != num_users || weights.size() != num_users)
    throw std::invalid_argument("LinkBudget: per-user sizes inconsistent");
  if ((noise_power.array() <= 0.0).any())
    throw std::invalid_argument("LinkBudget: noise power must be > 0");
  if ((weights.array() < 0.0).any())
    throw std::invalid_argument("LinkBudget: weights must be >= 0");
}

double sinr(int k, const PhaseConfig& phases, const BeamMatrix& beams,
            const ChannelRealization& channels, const LinkBudget& budget) {
  const int num_users = channels.num_users();
  budget.validate(num_users);
  if (k < 0 || k >= num_users)
    throw std::invalid_argument("sinr: user index out of range");
  if (beams.num_users() != num_users)
    throw std::invalid_argument("sinr: beam/user count mismatch");

  const ComplexRowVector h =
      effective_miso(channels.f[static_cast<std::size_t>(k)], phases,
                     channels.g);
  double signal = 0.0;
  double interference = 0.0;
  for (int j = 0; j < num_users; ++j) {
    const double p = std::norm((h * beams.matrix().col(j))(0));
    if (j == k)
      signal = p;
    else
      interference += p;
  }
  return signal / (interference + budget.noise_power[k]);
}

double wsr(const Eigen::VectorXd& sinrs, const Eigen::VectorXd& weights) {
  if (sinrs.size() != weights.size())
    throw std::invalid_argument("wsr: size mismatch");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < sinrs.size(); ++k) {
    if (sinrs[k] < 0.0) throw std::invalid_argument("wsr: negative SINR");
    sum += weights[k] * std::log2(1.0 + sinrs[k]);
  }
  return sum;
}

double wsr_effective(const ComplexMatrix& h_rows, const BeamMatrix& beams,
                     const LinkBudget& budget) {
  const int num_users = static_cast<int>(h_rows.rows());
  budget.validate(num_users);
  if (beams.num_users() != num_users ||
      beams.matrix().rows() != h_rows.cols())
    throw std::invalid_argument("wsr_effective: dimension mismatch");

  Eigen::VectorXd gammas(num_users);
  for (int k = 0; k < num_users; ++k) {
    double signal = 0.0;
    double interference = 0.0;
    for (int j = 0; j < num_users; ++j) {
      const double p = std::norm((h_rows.row(k) * beams.matrix().col(j))(0));
      if (j == k)
        signal = p;
      else
        interference += p;
    }
    gammas[k] = signal / (interference + budget.noise_power[k]);
  }
  return wsr(gammas, budget.weights);
}

double coherence_time(const ProtocolParams& p) {
  if (p.avg_speed <= 0.0)
    throw std::domain_error("coherence_time: speed must be > 0");
  if (p.carrier_freq <= 0.0 || p.wave_speed <= 0.0)
    throw std::invalid_argument("coherence_time: invalid protocol parameters");
  const double doppler = p.avg_speed * p.carrier_freq / p.wave_speed;
  return 1.0 / doppler;
}

ThroughputResult protocol_throughput(double rate, int num_users,
                                     int num_irs_elements,
                                     double symbol_duration,
                                     double coherence_time,
                                     PilotScheme scheme) {
  if (num_users < 1 || num_irs_elements < 1)
    throw std::invalid_argument("protocol_throughput: counts must be >= 1");
  if (symbol_duration <= 0.0 || coherence_time <= 0.0)
    throw std::invalid_argument("protocol_throughput: durations must be > 0");
  const double pilots =
      scheme == PilotScheme::kFullIcsi
          ? static_cast<double>(num_users) * num_irs_elements
          : static_cast<double>(num_users);
  const double overhead = pilots * symbol_duration / coherence_time;
  if (overhead >= 1.0) return {0.0, false};
  return {(1.0 - overhead) * rate, true};
}

double pilot_overhead_ratio(int num_users, int num_irs_elements) {
  if (num_users < 1 || num_irs_elements < 1)
    throw std::invalid_argument("pilot_overhead_ratio: counts must be >= 1");
  return 1.0 / static_cast<double>(num_irs_elements);
}

}  // namespace irsim
