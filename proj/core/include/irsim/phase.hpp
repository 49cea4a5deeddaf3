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

namespace irsim {

/// Wraps an angle into [0, 2*pi). 2*pi maps to 0.
double wrap_phase(double phi);

/// Per-element IRS phase shifts phi_n in [0, 2*pi). The induced reflection
/// coefficients are c_n = exp(j*phi_n); the phase-shift matrix is diag(c).
class PhaseConfig {
 public:
  /// Wraps every entry into [0, 2*pi).
  explicit PhaseConfig(Eigen::VectorXd phases);

  int size() const { return static_cast<int>(phases_.size()); }
  const Eigen::VectorXd& phases() const { return phases_; }

  /// c = exp(j*phi), unit modulus per entry.
  Eigen::VectorXcd unit_vector() const;

 private:
  Eigen::VectorXd phases_;
};

}  // namespace irsim
