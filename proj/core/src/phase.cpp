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

#include "irsim/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsim {

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;  // fmod can land exactly on 2*pi after the add
  return w;
}

PhaseConfig::PhaseConfig(Eigen::VectorXd phases) : phases_(std::move(phases)) {
  if (phases_.size() == 0)
    throw std::invalid_argument("PhaseConfig: empty phase vector");
  for (Eigen::Index n = 0; n < phases_.size(); ++n) {
    if (!std::isfinite(phases_[n]))
      throw std::invalid_argument("PhaseConfig: non-finite phase");
    phases_[n] = wrap_phase(phases_[n]);
  }
}

Eigen::VectorXcd PhaseConfig::unit_vector() const {
  Eigen::VectorXcd c(phases_.size());
  for (Eigen::Index n = 0; n < phases_.size(); ++n)
    c[n] = std::complex<double>(std::cos(phases_[n]), std::sin(phases_[n]));
  return c;
}

}  // namespace irsim
