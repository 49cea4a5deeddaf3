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
#include "irsim/phase.hpp"

namespace irsim::nn {

/// Architecture of the location-aware CLSTM graph network that maps cascaded
/// LoS channel histories to next-slot IRS phases (plus auxiliary beams).
/// User-side blocks share one parameter set, so the same network serves any
/// number of users.
struct LaClGnnConfig {
  int irs_rows = 4;         // N_z
  int irs_cols = 4;         // N_y
  int num_ap_antennas = 4;  // M
  int conv_filters = 4;
  int conv_kernel = 3;
  int pool_window = 3;
  int pool_stride = 3;
  int clstm_feature = 64;   // flatten projection width and LSTM hidden size
  int gnn_width = 128;      // node feature width and MLP hidden width
  int gnn_layers = 2;       // D

  int num_irs_elements() const { return irs_rows * irs_cols; }

  /// Spatial size after the pooling stage (ceil mode).
  int pooled_rows() const {
    return (irs_rows * irs_cols + pool_stride - 1) / pool_stride;
  }
  int pooled_cols() const {
    return (num_ap_antennas + pool_stride - 1) / pool_stride;
  }
  int flatten_width() const {
    return conv_filters * pooled_rows() * pooled_cols();
  }

  /// Reduced dimensions used across the test suite.
  static LaClGnnConfig desk(int irs_rows = 4, int irs_cols = 4, int m = 4) {
    LaClGnnConfig c;
    c.irs_rows = irs_rows;
    c.irs_cols = irs_cols;
    c.num_ap_antennas = m;
    return c;
  }

  /// Full-size layer widths (512-wide GNN and heads).
  static LaClGnnConfig paper(int irs_rows = 10, int irs_cols = 10, int m = 6) {
    LaClGnnConfig c;
    c.irs_rows = irs_rows;
    c.irs_cols = irs_cols;
    c.num_ap_antennas = m;
    c.gnn_width = 512;
    return c;
  }

  /// Small widths for finite-difference gradient checks.
  static LaClGnnConfig tiny(int irs_rows = 2, int irs_cols = 2, int m = 2) {
    LaClGnnConfig c;
    c.irs_rows = irs_rows;
    c.irs_cols = irs_cols;
    c.num_ap_antennas = m;
    c.clstm_feature = 8;
    c.gnn_width = 8;
    return c;
  }

  void validate() const;
};

/// Real-valued network input of one user: shape (tau, N, M, 2). Slot s holds
/// the Re/Im planes of the cascaded LoS channel at time t-(s+1), so slot 0 is
/// the most recent history entry.
struct FeatureTensor {
  ad::Tensor data;

  int history_len() const { return data.dim(0); }

  /// Maps history matrices ordered oldest first (t-tau, ..., t-1) into the
  /// slot layout above. Throws std::invalid_argument on an empty history or
  /// inconsistent matrix sizes.
  static FeatureTensor from_history(const std::vector<ComplexMatrix>& history);

  /// Inverse mapping, returning matrices ordered oldest first.
  std::vector<ComplexMatrix> to_history() const;
};

struct PredictiveOutput {
  PhaseConfig phases;
  BeamMatrix aux_beams;
};

/// One unsupervised training example: per-user feature tensors plus the LoS
/// channels of the target slot (with path-loss scaling applied).
struct PhaseExample {
  std::vector<FeatureTensor> omega;     // K entries
  ComplexMatrix g_los;                  // N x M
  std::vector<ComplexVector> f_los;     // K entries, N x 1
};

/// Vars of one forward pass over a batch.
struct LaClForwardVars {
  ad::Var phases;      // (B, N), values in (0, 2*pi)
  ad::Var beam_stack;  // (B, 2*M*K); each row has sum of squares == power
};

class LaClGnn {
 public:
  LaClGnn(LaClGnnConfig config, std::uint64_t seed);

  const LaClGnnConfig& config() const { return config_; }
  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

  // --- Inference -------------------------------------------------------

  /// Full pass: CLSTM per user, IRS node init, D GNN layers, generation
  /// heads. Accepts any user count without parameter changes.
  PredictiveOutput forward(const std::vector<FeatureTensor>& omega,
                           double power) const;

  /// CLSTM feature of one user, length clstm_feature.
  ad::Tensor clstm_forward(const FeatureTensor& omega) const;

  /// IRS node feature from the element-wise mean of the user features.
  ad::Tensor irs_node_init(const std::vector<ad::Tensor>& user_features) const;

  /// One aggregation-combination layer (1-based index d).
  std::pair<ad::Tensor, std::vector<ad::Tensor>> gnn_layer(
      int d, const ad::Tensor& irs_feature,
      const std::vector<ad::Tensor>& user_features) const;

  /// Phase head: 2*pi*sigmoid(MLP(v0)), each output strictly inside
  /// (0, 2*pi).
  PhaseConfig generate_phase(const ad::Tensor& irs_feature) const;

  /// Beam head: per-user 2M-real outputs stacked and Frobenius-normalized to
  /// exactly the power budget. Throws std::domain_error when the
  /// pre-normalization matrix is zero.
  BeamMatrix generate_aux_beam(const std::vector<ad::Tensor>& user_features,
                               double power) const;

  // --- Graph building (training) ---------------------------------------

  std::vector<ad::Var> place_params(ad::Tape& tape, bool requires_grad) const {
    return params_.place(tape, requires_grad);
  }

  /// Batched forward over examples' per-user feature tensors.
  LaClForwardVars build_forward(
      ad::Tape& tape, const std::vector<ad::Var>& param_vars,
      const std::vector<const std::vector<FeatureTensor>*>& omega_batch,
      double power) const;

  /// Negative mean LoS weighted sum-rate of the batch, differentiable
  /// end-to-end.
  ad::Var build_loss(ad::Tape& tape, const std::vector<ad::Var>& param_vars,
                     const std::vector<const PhaseExample*>& batch,
                     const LinkBudget& budget, double power) const;

  /// Loss value at the current parameters.
  double loss(const std::vector<const PhaseExample*>& batch,
              const LinkBudget& budget, double power) const;

  // --- Persistence ------------------------------------------------------

  void save(const std::string& path) const;
  static LaClGnn load(const std::string& path);

 private:
  struct MlpIdx {
    int w1, b1, w2, b2, w3, b3, wo, bo;
  };
  struct ParamIdx {
    int conv_kernel, conv_bias;
    int proj_w, proj_b;
    int lstm_wx, lstm_wh, lstm_b;
    int gfc_w1, gfc_b1, gfc_w2, gfc_b2;
    std::vector<MlpIdx> irs_comb;   // per GNN layer
    std::vector<MlpIdx> user_comb;  // per GNN layer
    MlpIdx head_phase, head_beam;
  };

  void build_params(std::uint64_t seed);
  ad::Var apply_mlp(ad::Tape& tape, const std::vector<ad::Var>& p,
                    const MlpIdx& idx, ad::Var x) const;
  ad::Var clstm_batch(ad::Tape& tape, const std::vector<ad::Var>& p,
                      const std::vector<const FeatureTensor*>& user_slices)
      const;
  std::pair<ad::Var, std::vector<ad::Var>> gnn_layer_vars(
      ad::Tape& tape, const std::vector<ad::Var>& p, int d, ad::Var v0,
      const std::vector<ad::Var>& vk) const;

  LaClGnnConfig config_;
  ParamSet params_;
  ParamIdx idx_;
};

}  // namespace irsim::nn
