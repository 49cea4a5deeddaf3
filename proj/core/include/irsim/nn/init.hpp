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

#include "irsim/ad/tape.hpp"
#include "irsim/ad/tensor.hpp"
#include "irsim/ad/checkpoint.hpp"
#include "irsim/rng.hpp"

namespace irsim::nn {

/// U(-bound, bound) entries.
ad::Tensor uniform_init(std::vector<int> shape, double bound, Rng& rng);

/// Scaled uniform fan-in scheme for layers followed by ReLU:
/// bound = sqrt(6 / fan_in).
ad::Tensor kaiming_uniform(std::vector<int> shape, int fan_in, Rng& rng);

/// Scaled uniform for linear/sigmoid/tanh layers:
/// bound = sqrt(6 / (fan_in + fan_out)).
ad::Tensor xavier_uniform(std::vector<int> shape, int fan_in, int fan_out,
                          Rng& rng);

/// Unit-gain recurrence scaling: bound = sqrt(3 / hidden), which gives the
/// recurrent map approximately unit spectral scale like an orthogonal init.
ad::Tensor recurrent_uniform(std::vector<int> shape, int hidden, Rng& rng);

/// Ordered collection of named trainable tensors. The order is the
/// checkpoint order and the order in which place() enters them on a tape.
class ParamSet {
 public:
  int add(std::string name, ad::Tensor init);

  std::size_t size() const { return tensors_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  ad::Tensor& tensor(std::size_t i) { return tensors_[i]; }
  const ad::Tensor& tensor(std::size_t i) const { return tensors_[i]; }
  std::vector<ad::Tensor>& tensors() { return tensors_; }
  const std::vector<ad::Tensor>& tensors() const { return tensors_; }

  /// Enters every tensor as a leaf on the tape, in order.
  std::vector<ad::Var> place(ad::Tape& tape, bool requires_grad) const;

  std::vector<ad::NamedTensor> named() const;

  /// Replaces tensors by name; every stored name must be present with a
  /// matching shape.
  void load_named(const std::vector<ad::NamedTensor>& named);

  /// Total payload bytes of the parameter values.
  std::int64_t value_bytes() const;

 private:
  std::vector<std::string> names_;
  std::vector<ad::Tensor> tensors_;
};

}  // namespace irsim::nn
