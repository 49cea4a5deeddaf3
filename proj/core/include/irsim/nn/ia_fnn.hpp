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
#include <string>
#include <vector>

#include "irsim/ad/ops.hpp"
#include "irsim/ad/tape.hpp"
#include "irsim/channel.hpp"
#include "irsim/metrics.hpp"
#include "irsim/nn/init.hpp"

namespace irsim::nn {

/// Instantaneous-CSI beamforming network: a shared per-user branch (FC1),
/// mean/max context pooling across users, a shared per-user head (FC2), and
/// Frobenius power normalization. Shared weights plus symmetric pooling make
/// the mapping permutation equivariant and valid for any user count.
struct IaFnnConfig {
  int num_ap_antennas = 4;  // M
  int fc1_w1 = 32;
  int fc1_w2 = 16;
  int fc1_w3 = 16;  // per-user feature width
  int fc2_w1 = 64;
  int fc2_w2 = 32;  // FC2 output width is 2*M

  static IaFnnConfig desk(int m = 4) { return IaFnnConfig{m, 32, 16, 16, 64, 32}; }
  static IaFnnConfig tiny(int m = 2) { return IaFnnConfig{m, 8, 4, 4, 8, 8}; }

  void validate() const;
};

/// Network input: real tensor (M, K, 2); column k carries the Re/Im parts of
/// the estimated effective channel of user k. The layout is invertible.
struct IcsiInput {
  ad::Tensor data;

  int num_antennas() const { return data.dim(0); }
  int num_users() const { return data.dim(1); }

  /// Rows of h_rows are the (estimated) effective channels h_k^H.
  static IcsiInput from_channels(const ComplexMatrix& h_rows);

  /// Inverse of from_channels.
  ComplexMatrix to_channels() const;
};

/// One training example: estimated channels paired with the true channels of
/// the same slot (rows are h_k^H).
struct BeamExample {
  ComplexMatrix h_hat;
  ComplexMatrix h_true;
};

class IaFnn {
 public:
  IaFnn(IaFnnConfig config, std::uint64_t seed);

  const IaFnnConfig& config() const { return config_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  /// Fixed input calibration applied before FC1. Set from the training set
  /// so that branch activations are of order one regardless of the absolute
  /// channel magnitudes; persisted with the parameters.
  double input_scale() const { return input_scale_; }
  void set_input_scale(double s);

  /// Forward pass to a power-feasible beam matrix (||W||_F^2 = P exactly).
  /// Throws std::domain_error when the pre-normalization output is zero.
  BeamMatrix forward(const IcsiInput& input, double power) const;

  std::vector<ad::Var> place_params(ad::Tape& tape, bool requires_grad) const {
    return params_.place(tape, requires_grad);
  }

  /// Batched forward; returns the (B, 2*M*K) normalized beam stack.
  ad::Var build_forward(ad::Tape& tape,
                        const std::vector<ad::Var>& param_vars,
                        const std::vector<const ComplexMatrix*>& h_hat_batch,
                        double power) const;

  /// Negative mean WSR with the TRUE channels and the beams the network
  /// produces from the ESTIMATED channels.
  ad::Var build_loss(ad::Tape& tape, const std::vector<ad::Var>& param_vars,
                     const std::vector<const BeamExample*>& batch,
                     const LinkBudget& budget, double power) const;

  double loss(const std::vector<const BeamExample*>& batch,
              const LinkBudget& budget, double power) const;

  void save(const std::string& path) const;
  static IaFnn load(const std::string& path);

 private:
  void build_params(std::uint64_t seed);

  IaFnnConfig config_;
  ParamSet params_;
  double input_scale_ = 1.0;

  struct ParamIdx {
    int fc1_w1, fc1_b1, fc1_w2, fc1_b2, fc1_w3, fc1_b3;
    int fc2_w1, fc2_b1, fc2_w2, fc2_b2, fc2_w3, fc2_b3;
  } idx_{};
};

}  // namespace irsim::nn
