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
#include <vector>

#include "irsim/ad/tensor.hpp"

namespace irsim::ad {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adaptive-moment descent with bias correction. Deterministic: the update
/// depends only on the accumulated state and the supplied gradients.
class AdamState {
 public:
  AdamState(const std::vector<Tensor>& params, AdamConfig config = {});

  /// In-place parameter update. Throws std::invalid_argument on any shape
  /// mismatch against the state.
  void step(std::vector<Tensor>& params, const std::vector<Tensor>& grads);

  std::int64_t step_count() const { return step_count_; }
  const AdamConfig& config() const { return config_; }

 private:
  AdamConfig config_;
  std::vector<Tensor> first_moment_;
  std::vector<Tensor> second_moment_;
  std::int64_t step_count_ = 0;
};

}  // namespace irsim::ad
