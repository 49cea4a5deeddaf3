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

#include "irsim/ad/tape.hpp"

namespace irsim::ad {

/// Scalar function built on a fresh tape; the supplied vars mirror `params`
/// and require gradients.
using ScalarFn = std::function<Var(Tape&, const std::vector<Var>&)>;

/// Compares reverse-mode gradients of f at `params` against central finite
/// differences. Returns the maximum over all coordinates of
/// |analytic - numeric| / (|analytic| + |numeric| + floor).
double grad_check(const ScalarFn& f, const std::vector<Tensor>& params,
                  double eps = 1e-5, double floor = 1e-6);

}  // namespace irsim::ad
