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

#include "irsim/nn/init.hpp"

#include <cmath>
#include <stdexcept>

namespace irsim::nn {

ad::Tensor uniform_init(std::vector<int> shape, double bound, Rng& rng) {
  ad::Tensor t(std::move(shape));
  for (std::int64_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-bound, bound);
  return t;
}

ad::Tensor kaiming_uniform(std::vector<int> shape, int fan_in, Rng& rng) {
  if (fan_in < 1) throw std::invalid_argument("init: fan_in must be >= 1");
  return uniform_init(std::move(shape), std::sqrt(6.0 / fan_in), rng);
}

ad::Tensor xavier_uniform(std::vector<int> shape, int fan_in, int fan_out,
                          Rng& rng) {
  if (fan_in < 1 || fan_out < 1)
    throw std::invalid_argument("init: fans must be >= 1");
  return uniform_init(std::move(shape), std::sqrt(6.0 / (fan_in + fan_out)),
                      rng);
}

ad::Tensor recurrent_uniform(std::vector<int> shape, int hidden, Rng& rng) {
  if (hidden < 1) throw std::invalid_argument("init: hidden must be >= 1");
  return uniform_init(std::move(shape), std::sqrt(3.0 / hidden), rng);
}

int ParamSet::add(std::string name, ad::Tensor init) {
  names_.push_back(std::move(name));
  tensors_.push_back(std::move(init));
  return static_cast<int>(tensors_.size()) - 1;
}

std::vector<ad::Var> ParamSet::place(ad::Tape& tape, bool requires_grad) const {
  std::vector<ad::Var> vars;
  vars.reserve(tensors_.size());
  for (const ad::Tensor& t : tensors_) vars.push_back(tape.leaf(t, requires_grad));
  return vars;
}

std::vector<ad::NamedTensor> ParamSet::named() const {
  std::vector<ad::NamedTensor> out;
  out.reserve(tensors_.size());
  for (std::size_t i = 0; i < tensors_.size(); ++i)
    out.push_back({names_[i], tensors_[i]});
  return out;
}

void ParamSet::load_named(const std::vector<ad::NamedTensor>& named) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    bool found = false;
    for (const ad::NamedTensor& nt : named) {
      if (nt.name != names_[i]) continue;
      if (!nt.tensor.same_shape(tensors_[i]))
        throw std::runtime_error("params: shape mismatch for " + names_[i]);
      tensors_[i] = nt.tensor;
      found = true;
      break;
    }
    if (!found) throw std::runtime_error("params: missing tensor " + names_[i]);
  }
}

std::int64_t ParamSet::value_bytes() const {
  std::int64_t total = 0;
  for (const ad::Tensor& t : tensors_)
    total += t.size() * static_cast<std::int64_t>(sizeof(double));
  return total;
}

}  // namespace irsim::nn
