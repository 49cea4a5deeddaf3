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

#include "irsim/ad/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace irsim::ad {

std::int64_t shape_size(const std::vector<int>& shape) {
  if (shape.empty()) throw std::invalid_argument("tensor: empty shape");
  std::int64_t n = 1;
  for (int d : shape) {
    if (d < 1) throw std::invalid_argument("tensor: non-positive dimension");
    n *= d;
  }
  return n;
}

Tensor::Tensor(std::vector<int> shape)
    : shape_(std::move(shape)),
      data_(static_cast<std::size_t>(shape_size(shape_)), 0.0) {}

Tensor::Tensor(std::vector<int> shape, std::vector<double> values)
    : shape_(std::move(shape)), data_(std::move(values)) {
  if (shape_size(shape_) != static_cast<std::int64_t>(data_.size()))
    throw std::invalid_argument("tensor: value count does not match shape");
}

double Tensor::value() const {
  if (size() != 1) throw std::invalid_argument("tensor: not a scalar");
  return data_[0];
}

bool Tensor::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

int Tensor::rows() const {
  if (rank() != 2) throw std::invalid_argument("tensor: rows() needs rank 2");
  return shape_[0];
}

int Tensor::cols() const {
  if (rank() != 2) throw std::invalid_argument("tensor: cols() needs rank 2");
  return shape_[1];
}

}  // namespace irsim::ad
