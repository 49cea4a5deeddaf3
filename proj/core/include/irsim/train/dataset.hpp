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

#include "irsim/nn/ia_fnn.hpp"
#include "irsim/nn/lacl_gnn.hpp"
#include "irsim/scenario.hpp"

namespace irsim::train {

/// Unsupervised training set for the phase network: per-user cascaded LoS
/// histories paired with the (path-loss scaled) LoS channels of the target
/// slot.
struct PhaseDataset {
  ScenarioConfig scenario;
  std::vector<nn::PhaseExample> examples;

  void save(const std::string& path) const;
  static PhaseDataset load(const std::string& path);
};

/// Training set for the beam network: estimated/true effective channel pairs
/// under the trained phase network.
struct BeamDataset {
  ScenarioConfig scenario;
  std::vector<nn::BeamExample> examples;

  void save(const std::string& path) const;
  static BeamDataset load(const std::string& path);
};

/// Simulates `count` examples: each user starts uniformly in the service
/// area, moves for tau+1 slots, and contributes the cascaded LoS channels of
/// slots t-tau..t-1 as features; the target stores the pure-LoS channels at
/// slot t scaled by the slot-t path losses. Example i draws from the stream
/// derived from (seed, i), so generation may be sharded without changing the
/// result.
PhaseDataset generate_dataset_phase(const ScenarioConfig& cfg, int count,
                                    std::uint64_t seed);

/// Simulates `count` examples: predicts the phase matrix from each example's
/// histories, samples full Rician channels at the target slot, forms the true
/// effective channels, and injects estimation noise at the scenario NMSE.
/// The NMSE reference power is the per-user dataset mean of ||h_k||^2,
/// computed before noise injection.
BeamDataset generate_dataset_beam(const nn::LaClGnn& phase_net,
                                  const ScenarioConfig& cfg, int count,
                                  std::uint64_t seed);

}  // namespace irsim::train
