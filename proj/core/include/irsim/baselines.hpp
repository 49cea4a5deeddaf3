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

#include <string>
#include <vector>

#include "irsim/channel.hpp"
#include "irsim/metrics.hpp"
#include "irsim/phase.hpp"
#include "irsim/rng.hpp"

namespace irsim {

/// Per-iteration objective values of an alternating solver. The sequence is
/// monotone non-decreasing up to numerical tolerance; that property is the
/// tested contract of the solver.
struct SolverTrace {
  std::vector<double> wsr_per_iteration;  // entry 0 is the initial point
  bool converged = false;
  std::string stop_reason;

  int iterations() const {
    return static_cast<int>(wsr_per_iteration.size()) - 1;
  }
  double final_wsr() const { return wsr_per_iteration.back(); }

  /// "iteration,wsr" rows, one per recorded value.
  std::string to_csv() const;
};

struct StaleCsiConfig {
  int lag = 5;  // tau_0, slots

  void validate() const;
};

/// Maximum-ratio transmission with equal per-user power split:
/// w_k = sqrt(P/K) * h_k / ||h_k||. Rows of h_rows are the effective
/// channels h_k^H. Throws std::domain_error when some row is zero.
BeamMatrix mrt(const ComplexMatrix& h_rows, double power);

/// Independent phases uniform on [0, 2*pi).
PhaseConfig random_phase(int num_elements, Rng& rng);

struct FpOptions {
  double tolerance = 1e-2;  // stop when the WSR increment falls below this
  int max_iterations = 200;
};

struct FpResult {
  PhaseConfig phases;
  BeamMatrix beams;
  SolverTrace trace;
};

/// Weighted sum-rate maximization over (Phi, W) by alternating closed-form
/// surrogate updates: a Lagrangian-dual + quadratic transform step for W
/// (ratio updates plus a power bisection) and per-element unit-modulus
/// coordinate ascent for the phases, both maximizing the same surrogate so
/// the WSR trace is monotone. Initialization: all-zero phases and MRT on the
/// resulting effective channels.
FpResult fp_wsr_maximize(const ChannelRealization& channels,
                         const LinkBudget& budget, double power,
                         const FpOptions& options = {});

struct NaiveFpResult {
  double wsr_achieved = 0.0;  // WSR of the stale solution on the true channel
  PhaseConfig phases;
  BeamMatrix beams;
  SolverTrace trace;  // trace of the solve on the stale channels
};

/// Benchmark that optimizes on outdated CSI and deploys the result on the
/// current channel: runs fp_wsr_maximize on `stale` and evaluates the
/// returned (Phi, W) on `current`.
NaiveFpResult naive_fp(const ChannelRealization& stale,
                       const ChannelRealization& current,
                       const LinkBudget& budget, double power,
                       const FpOptions& options = {});

}  // namespace irsim
