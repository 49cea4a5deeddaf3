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

#include "irsim/train/dataset.hpp"

namespace irsim::train {

struct TrainConfig {
  int epochs = 50;
  int batch_size = 32;
  double learning_rate = 1e-3;
  std::uint64_t seed = 1;
  double train_fraction = 0.9;  // remainder is the held-out split
};

struct TrainRecord {
  std::vector<double> epoch_loss;  // mean training loss per epoch
  double initial_loss = 0.0;
  double final_loss = 0.0;
  double heldout_initial = 0.0;
  double heldout_final = 0.0;
  bool diverged = false;

  /// "epoch,loss" rows (epoch 0 is the pre-training loss).
  std::string to_csv() const;
};

/// Mini-batch descent on the phase network's unsupervised loss. Deterministic
/// under a fixed seed. Sets diverged and stops if the loss becomes
/// non-finite.
TrainRecord train_lacl(nn::LaClGnn& net, const PhaseDataset& dataset,
                       const TrainConfig& cfg);

/// Mini-batch descent on the beam network loss. Calibrates the network's
/// input scale from the training split before the first step.
TrainRecord train_iafnn(nn::IaFnn& net, const BeamDataset& dataset,
                        const TrainConfig& cfg);

/// Pure inference: next-slot phases from per-user feature tensors. All users
/// must carry the same (nonzero) number of history slots.
PhaseConfig predict_online(const nn::LaClGnn& net,
                           const std::vector<nn::FeatureTensor>& histories);

/// Pure inference: beams from estimated effective channels (rows h_k^H).
BeamMatrix beamform_online(const nn::IaFnn& net,
                           const ComplexMatrix& h_hat_rows, double power);

}  // namespace irsim::train
