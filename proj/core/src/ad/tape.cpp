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

#include "irsim/ad/tape.hpp"

#include <stdexcept>

namespace irsim::ad {

Var Tape::leaf(Tensor value, bool requires_grad) {
  if (!value.all_finite())
    throw std::invalid_argument("tape: leaf value has non-finite entries");
  Node node;
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  nodes_.push_back(std::move(node));
  grad_set_.push_back(0);
  grads_.emplace_back();
  return Var{this, static_cast<int>(nodes_.size()) - 1};
}

const Tensor& Tape::value(Var v) const {
  if (v.tape != this) throw std::invalid_argument("tape: foreign var");
  return nodes_[static_cast<std::size_t>(v.id)].value;
}

bool Tape::requires_grad(Var v) const {
  if (v.tape != this) throw std::invalid_argument("tape: foreign var");
  return nodes_[static_cast<std::size_t>(v.id)].requires_grad;
}

Var Tape::record(Tensor value, std::vector<int> parents, BackwardFn backward) {
  Node node;
  node.value = std::move(value);
  node.parents = std::move(parents);
  for (int p : node.parents)
    if (nodes_[static_cast<std::size_t>(p)].requires_grad) {
      node.requires_grad = true;
      break;
    }
  if (node.requires_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  grad_set_.push_back(0);
  grads_.emplace_back();
  return Var{this, static_cast<int>(nodes_.size()) - 1};
}

Tensor& Tape::grad(int id) {
  auto idx = static_cast<std::size_t>(id);
  if (!grad_set_[idx]) {
    grads_[idx] = Tensor::zeros_like(nodes_[idx].value);
    grad_set_[idx] = 1;
  }
  return grads_[idx];
}

std::vector<Tensor> Tape::backprop(Var output, const std::vector<Var>& wrt) {
  if (output.tape != this) throw std::invalid_argument("tape: foreign output");
  if (nodes_[static_cast<std::size_t>(output.id)].value.size() != 1)
    throw std::invalid_argument("tape: backprop output must be a scalar");

  // Reset accumulation buffers from any previous pass.
  for (std::size_t i = 0; i < grad_set_.size(); ++i) {
    grad_set_[i] = 0;
    grads_[i] = Tensor();
  }

  grad(output.id)[0] = 1.0;
  for (int id = output.id; id >= 0; --id) {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (!node.requires_grad || !node.backward) continue;
    if (!grad_set_[static_cast<std::size_t>(id)]) continue;  // not on the path
    node.backward(*this, grads_[static_cast<std::size_t>(id)]);
  }

  std::vector<Tensor> out;
  out.reserve(wrt.size());
  for (Var v : wrt) {
    if (v.tape != this) throw std::invalid_argument("tape: foreign wrt var");
    if (grad_set_[static_cast<std::size_t>(v.id)])
      out.push_back(grads_[static_cast<std::size_t>(v.id)]);
    else
      out.push_back(Tensor::zeros_like(nodes_[static_cast<std::size_t>(v.id)].value));
  }
  return out;
}

}  // namespace irsim::ad
