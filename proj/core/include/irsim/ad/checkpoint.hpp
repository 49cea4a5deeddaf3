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

#include "irsim/ad/tensor.hpp"

namespace irsim::ad {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

/// Versioned little-endian binary dump of named parameter tensors:
/// magic "IRSIMCK1", u32 version, u32 count, then per tensor a
/// length-prefixed name, u32 rank, i64 dims, and f64 data.
void save_checkpoint(const std::string& path,
                     const std::vector<NamedTensor>& tensors);

/// Loads a checkpoint, validating magic, version, and sizes. Throws
/// std::runtime_error on format violations.
std::vector<NamedTensor> load_checkpoint(const std::string& path);

}  // namespace irsim::ad
