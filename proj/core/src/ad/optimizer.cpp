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

#include "irsim/ad/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace irsim::ad {

AdamState::AdamState(const std::vector<Tensor>& params, AdamConfig config)
    : config_(config) {
  first_moment_.reserve(params.size());
  second_moment_.reserve(params.size());
  for (const Tensor& p : params) {
    first_moment_.push_back(Tensor::zeros_like(p));
    second_moment_.push_back(Tensor::zeros_like(p));
  }
}

void AdamState::step(std::vector<Tensor>& params,
                     const std::vector<Tensor>& grads) {
  if (params.size() != first_moment_.size() || grads.size() != params.size())
    throw std::invalid_argument("adam: parameter/gradient count mismatch");
  ++step_count_;
  const double bc1 =
      1.0 - std::pow(config_.beta1, static_cast<double>(step_count_));
  const double bc2 =
      1.0 - std::pow(config_.beta2, static_cast<double>(step_count_));
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor& theta = params[p];
    const Tensor& g = grads[p];
    Tensor& m = first_moment_[p];
    Tensor& v = second_moment_[p];
    if (!theta.same_shape(g) || !theta.same_shape(m))
      throw std::invalid_argument("adam: shape mismatch");
    for (std::int64_t i = 0; i < theta.size(); ++i) {
      m[i] = config_.beta1 * m[i] + (1.0 - config_.beta1) * g[i];
      v[i] = config_.beta2 * v[i] + (1.0 - config_.beta2) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      theta[i] -= config_.learning_rate * m_hat /
                  (std::sqrt(v_hat) + config_.epsilon);
    }
  }
}

}  // namespace irsim::ad
