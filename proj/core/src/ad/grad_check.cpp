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

#include "irsim/ad/grad_check.hpp"

#include <cmath>
#include <stdexcept>

namespace irsim::ad {

namespace {

double evaluate(const ScalarFn& f, const std::vector<Tensor>& params) {
  Tape tape;
  std::vector<Var> vars;
  vars.reserve(params.size());
  for (const Tensor& p : params) vars.push_back(tape.leaf(p, false));
  return tape.value(f(tape, vars)).value();
}

}  // namespace

double grad_check(const ScalarFn& f, const std::vector<Tensor>& params,
                  double eps, double floor) {
  if (eps <= 0.0) throw std::invalid_argument("grad_check: eps must be > 0");

  // Analytic gradients in one reverse pass.
  std::vector<Tensor> analytic;
  {
    Tape tape;
    std::vector<Var> vars;
    vars.reserve(params.size());
    for (const Tensor& p : params) vars.push_back(tape.leaf(p, true));
    const Var out = f(tape, vars);
    analytic = tape.backprop(out, vars);
  }

  double worst = 0.0;
  std::vector<Tensor> shifted = params;
  for (std::size_t p = 0; p < params.size(); ++p) {
    for (std::int64_t i = 0; i < params[p].size(); ++i) {
      const double orig = shifted[p][i];
      shifted[p][i] = orig + eps;
      const double up = evaluate(f, shifted);
      shifted[p][i] = orig - eps;
      const double down = evaluate(f, shifted);
      shifted[p][i] = orig;
      const double numeric = (up - down) / (2.0 * eps);
      const double a = analytic[p][i];
      const double err =
          std::abs(a - numeric) / (std::abs(a) + std::abs(numeric) + floor);
      if (err > worst) worst = err;
    }
  }
  return worst;
}

}  // namespace irsim::ad
