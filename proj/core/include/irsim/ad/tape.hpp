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

#include <functional>
#include <vector>

#include "irsim/ad/tensor.hpp"

namespace irsim::ad {

class Tape;

/// Handle to a value recorded on a tape. Cheap to copy.
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  bool valid() const { return tape != nullptr && id >= 0; }
};

/// Record of primitive applications in execution (topological) order,
/// supporting exact reverse-mode gradients of a scalar output. A tape is
/// single-writer; independent tapes may be used concurrently.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Enters a value with no parents. Non-finite values are rejected.
  Var leaf(Tensor value, bool requires_grad = false);
  Var constant(Tensor value) { return leaf(std::move(value), false); }
  Var constant_scalar(double v) { return leaf(Tensor::scalar(v), false); }

  const Tensor& value(Var v) const;
  const Tensor& value(int id) const { return nodes_[static_cast<std::size_t>(id)].value; }
  bool requires_grad(Var v) const;
  std::size_t node_count() const { return nodes_.size(); }

  /// Reverse pass from a scalar output. Returns one gradient tensor per
  /// entry of `wrt` (zeros for parameters the output does not depend on).
  /// Throws std::invalid_argument when `output` is not a scalar.
  std::vector<Tensor> backprop(Var output, const std::vector<Var>& wrt);

  // --- Interface used by the op implementations -------------------------

  using BackwardFn = std::function<void(Tape&, const Tensor& grad_out)>;

  /// Records a computed node. `backward` may be empty when no parent needs
  /// gradients.
  Var record(Tensor value, std::vector<int> parents, BackwardFn backward);

  /// Gradient accumulation buffer for node `id`, allocated on first use.
  Tensor& grad(int id);
  bool grad_allocated(int id) const {
    return grad_set_[static_cast<std::size_t>(id)];
  }

 private:
  struct Node {
    Tensor value;
    bool requires_grad = false;
    std::vector<int> parents;
    BackwardFn backward;
  };

  std::vector<Node> nodes_;
  std::vector<Tensor> grads_;
  std::vector<char> grad_set_;
};

}  // namespace irsim::ad
