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

#include "irsim/nn/lacl_gnn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsim::nn {

namespace {

constexpr double kMetaVersion = 1.0;

// Interleaves a complex matrix into an (rows, cols, 2) tensor.
ad::Tensor complex_to_tensor(const ComplexMatrix& m) {
  ad::Tensor t({static_cast<int>(m.rows()), static_cast<int>(m.cols()), 2});
  std::int64_t i = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c, ++i) {
      t[2 * i] = m(r, c).real();
      t[2 * i + 1] = m(r, c).imag();
    }
  return t;
}

// Gathers the (B, 2, N, M) conv input of one history slot for one user.
ad::Tensor slot_planes(const std::vector<const FeatureTensor*>& users,
                       int slot, int n, int m) {
  const int batch = static_cast<int>(users.size());
  ad::Tensor out({batch, 2, n, m});
  for (int b = 0; b < batch; ++b) {
    const ad::Tensor& src = users[static_cast<std::size_t>(b)]->data;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) {
        const std::int64_t base =
            ((static_cast<std::int64_t>(slot) * n + r) * m + c) * 2;
        const std::int64_t dst =
            ((static_cast<std::int64_t>(b) * 2 + 0) * n + r) * m + c;
        out[dst] = src[base];
        out[dst + static_cast<std::int64_t>(n) * m] = src[base + 1];
      }
  }
  return out;
}

}  // namespace

void LaClGnnConfig::validate() const {
  if (irs_rows < 1 || irs_cols < 1 || num_ap_antennas < 1)
    throw std::invalid_argument("lacl: geometry counts must be >= 1");
  if (conv_filters < 1 || conv_kernel < 1 || conv_kernel % 2 == 0)
    throw std::invalid_argument("lacl: conv filters/kernel invalid");
  if (pool_window < 1 || pool_stride < 1)
    throw std::invalid_argument("lacl: pooling parameters invalid");
  if (clstm_feature < 1 || gnn_width < 1 || gnn_layers < 1)
    throw std::invalid_argument("lacl: widths must be >= 1");
}

FeatureTensor FeatureTensor::from_history(
    const std::vector<ComplexMatrix>& history) {
  if (history.empty())
    throw std::invalid_argument("feature: empty channel history");
  const int tau = static_cast<int>(history.size());
  const int n = static_cast<int>(history[0].rows());
  const int m = static_cast<int>(history[0].cols());
  ad::Tensor data({tau, n, m, 2});
  for (int s = 0; s < tau; ++s) {
    // slot s holds the channel at t-(s+1); history is ordered oldest first.
    const ComplexMatrix& src = history[static_cast<std::size_t>(tau - 1 - s)];
    if (src.rows() != n || src.cols() != m)
      throw std::invalid_argument("feature: inconsistent history shapes");
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) {
        const std::int64_t base =
            ((static_cast<std::int64_t>(s) * n + r) * m + c) * 2;
        data[base] = src(r, c).real();
        data[base + 1] = src(r, c).imag();
      }
  }
  return FeatureTensor{std::move(data)};
}

std::vector<ComplexMatrix> FeatureTensor::to_history() const {
  const int tau = data.dim(0), n = data.dim(1), m = data.dim(2);
  std::vector<ComplexMatrix> out(static_cast<std::size_t>(tau));
  for (int s = 0; s < tau; ++s) {
    ComplexMatrix mat(n, m);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c) {
        const std::int64_t base =
            ((static_cast<std::int64_t>(s) * n + r) * m + c) * 2;
        mat(r, c) = {data[base], data[base + 1]};
      }
    out[static_cast<std::size_t>(tau - 1 - s)] = std::move(mat);
  }
  return out;
}

LaClGnn::LaClGnn(LaClGnnConfig config, std::uint64_t seed)
    : config_(config) {
  config_.validate();
  build_params(seed);
}

void LaClGnn::build_params(std::uint64_t seed) {
  Rng rng(seed);
  const int feat = config_.clstm_feature;
  const int width = config_.gnn_width;
  const int flat = config_.flatten_width();
  const int kk = config_.conv_kernel;

  idx_.conv_kernel = params_.add(
      "clstm.conv.kernel",
      kaiming_uniform({config_.conv_filters, 2, kk, kk}, 2 * kk * kk, rng));
  idx_.conv_bias =
      params_.add("clstm.conv.bias", ad::Tensor({config_.conv_filters}));
  idx_.proj_w = params_.add("clstm.proj.weight",
                            xavier_uniform({flat, feat}, flat, feat, rng));
  idx_.proj_b = params_.add("clstm.proj.bias", ad::Tensor({feat}));
  idx_.lstm_wx = params_.add("clstm.lstm.wx",
                             xavier_uniform({feat, 4 * feat}, feat, feat, rng));
  idx_.lstm_wh =
      params_.add("clstm.lstm.wh", recurrent_uniform({feat, 4 * feat}, feat, rng));
  idx_.lstm_b = params_.add("clstm.lstm.bias", ad::Tensor({4 * feat}));

  idx_.gfc_w1 = params_.add("irs_init.fc1.weight",
                            kaiming_uniform({feat, feat}, feat, rng));
  idx_.gfc_b1 = params_.add("irs_init.fc1.bias", ad::Tensor({feat}));
  idx_.gfc_w2 = params_.add("irs_init.fc2.weight",
                            kaiming_uniform({feat, feat}, feat, rng));
  idx_.gfc_b2 = params_.add("irs_init.fc2.bias", ad::Tensor({feat}));

  const auto add_mlp = [&](const std::string& prefix, int in_width,
                           int out_width) {
    MlpIdx m;
    m.w1 = params_.add(prefix + ".w1",
                       kaiming_uniform({in_width, width}, in_width, rng));
    m.b1 = params_.add(prefix + ".b1", ad::Tensor({width}));
    m.w2 = params_.add(prefix + ".w2", kaiming_uniform({width, width}, width, rng));
    m.b2 = params_.add(prefix + ".b2", ad::Tensor({width}));
    m.w3 = params_.add(prefix + ".w3", kaiming_uniform({width, width}, width, rng));
    m.b3 = params_.add(prefix + ".b3", ad::Tensor({width}));
    m.wo = params_.add(prefix + ".wo",
                       xavier_uniform({width, out_width}, width, out_width, rng));
    m.bo = params_.add(prefix + ".bo", ad::Tensor({out_width}));
    return m;
  };

  for (int d = 1; d <= config_.gnn_layers; ++d) {
    const int in_feat = d == 1 ? feat : width;
    idx_.irs_comb.push_back(
        add_mlp("gnn.layer" + std::to_string(d) + ".irs", 2 * in_feat, width));
    idx_.user_comb.push_back(
        add_mlp("gnn.layer" + std::to_string(d) + ".user", 3 * in_feat, width));
  }
  idx_.head_phase =
      add_mlp("head.phase", width, config_.num_irs_elements());
  idx_.head_beam = add_mlp("head.beam", width, 2 * config_.num_ap_antennas);
}

ad::Var LaClGnn::apply_mlp(ad::Tape&, const std::vector<ad::Var>& p,
                           const MlpIdx& idx, ad::Var x) const {
  using namespace ad;
  Var h = relu(dense(x, p[static_cast<std::size_t>(idx.w1)],
                     p[static_cast<std::size_t>(idx.b1)]));
  h = relu(dense(h, p[static_cast<std::size_t>(idx.w2)],
                 p[static_cast<std::size_t>(idx.b2)]));
  h = relu(dense(h, p[static_cast<std::size_t>(idx.w3)],
                 p[static_cast<std::size_t>(idx.b3)]));
  return dense(h, p[static_cast<std::size_t>(idx.wo)],
               p[static_cast<std::size_t>(idx.bo)]);
}

ad::Var LaClGnn::clstm_batch(
    ad::Tape& tape, const std::vector<ad::Var>& p,
    const std::vector<const FeatureTensor*>& user_slices) const {
  using namespace ad;
  const int batch = static_cast<int>(user_slices.size());
  const int n = config_.num_irs_elements();
  const int m = config_.num_ap_antennas;
  const int feat = config_.clstm_feature;
  const int tau = user_slices[0]->history_len();
  for (const FeatureTensor* ft : user_slices) {
    if (ft->data.rank() != 4 || ft->data.dim(0) != tau || ft->data.dim(1) != n ||
        ft->data.dim(2) != m || ft->data.dim(3) != 2)
      throw std::invalid_argument("lacl: feature tensor shape mismatch");
  }

  Var h = tape.constant(ad::Tensor({batch, feat}));
  Var c = tape.constant(ad::Tensor({batch, feat}));
  // Oldest slot first; the final hidden state corresponds to slot 0 (t-1).
  for (int s = tau - 1; s >= 0; --s) {
    Var x = tape.constant(slot_planes(user_slices, s, n, m));
    Var conv = relu(conv2d(x, p[static_cast<std::size_t>(idx_.conv_kernel)],
                           p[static_cast<std::size_t>(idx_.conv_bias)]));
    Var pooled = maxpool2d(conv, config_.pool_window, config_.pool_stride);
    Var flat = reshape(pooled, {batch, config_.flatten_width()});
    Var proj = dense(flat, p[static_cast<std::size_t>(idx_.proj_w)],
                     p[static_cast<std::size_t>(idx_.proj_b)]);

    Var gates = add(dense(proj, p[static_cast<std::size_t>(idx_.lstm_wx)],
                          p[static_cast<std::size_t>(idx_.lstm_b)]),
                    matmul(h, p[static_cast<std::size_t>(idx_.lstm_wh)]));
    Var gi = sigmoid(block(gates, 0, 0, batch, feat));
    Var gf = sigmoid(block(gates, 0, feat, batch, feat));
    Var gg = ad::tanh(block(gates, 0, 2 * feat, batch, feat));
    Var go = sigmoid(block(gates, 0, 3 * feat, batch, feat));
    c = add(mul(gf, c), mul(gi, gg));
    h = mul(go, ad::tanh(c));
  }
  return h;
}

std::pair<ad::Var, std::vector<ad::Var>> LaClGnn::gnn_layer_vars(
    ad::Tape& tape, const std::vector<ad::Var>& p, int d, ad::Var v0,
    const std::vector<ad::Var>& vk) const {
  using namespace ad;
  if (d < 1 || d > config_.gnn_layers)
    throw std::invalid_argument("lacl: GNN layer index out of range");
  const MlpIdx& irs_idx = idx_.irs_comb[static_cast<std::size_t>(d - 1)];
  const MlpIdx& user_idx = idx_.user_comb[static_cast<std::size_t>(d - 1)];
  const int batch = tape.value(v0).rows();
  const int in_feat = tape.value(v0).cols();

  Var mean_users = mean_of(vk);
  Var v0_next = apply_mlp(tape, p, irs_idx, concat_cols({v0, mean_users}));

  std::vector<Var> vk_next;
  vk_next.reserve(vk.size());
  for (std::size_t k = 0; k < vk.size(); ++k) {
    Var peers;
    if (vk.size() == 1) {
      // No peers to aggregate: neutral zero vector.
      peers = tape.constant(ad::Tensor({batch, in_feat}));
    } else {
      std::vector<Var> others;
      others.reserve(vk.size() - 1);
      for (std::size_t j = 0; j < vk.size(); ++j)
        if (j != k) others.push_back(vk[j]);
      peers = max_of(others);
    }
    vk_next.push_back(
        apply_mlp(tape, p, user_idx, concat_cols({v0, vk[k], peers})));
  }
  return {v0_next, std::move(vk_next)};
}

LaClForwardVars LaClGnn::build_forward(
    ad::Tape& tape, const std::vector<ad::Var>& param_vars,
    const std::vector<const std::vector<FeatureTensor>*>& omega_batch,
    double power) const {
  using namespace ad;
  if (omega_batch.empty())
    throw std::invalid_argument("lacl: empty batch");
  if (power <= 0.0) throw std::invalid_argument("lacl: power must be > 0");
  const int batch = static_cast<int>(omega_batch.size());
  const int num_users = static_cast<int>(omega_batch[0]->size());
  if (num_users < 1) throw std::invalid_argument("lacl: no users");
  for (const auto* ex : omega_batch)
    if (static_cast<int>(ex->size()) != num_users)
      throw std::invalid_argument("lacl: ragged user counts in batch");

  // Shared CLSTM applied per user over the whole batch.
  std::vector<Var> vk;
  vk.reserve(static_cast<std::size_t>(num_users));
  for (int k = 0; k < num_users; ++k) {
    std::vector<const FeatureTensor*> slices;
    slices.reserve(static_cast<std::size_t>(batch));
    for (const auto* ex : omega_batch)
      slices.push_back(&(*ex)[static_cast<std::size_t>(k)]);
    vk.push_back(clstm_batch(tape, param_vars, slices));
  }

  // IRS node init: g_FC(mean of user features).
  Var v0 = mean_of(vk);
  v0 = relu(dense(v0, param_vars[static_cast<std::size_t>(idx_.gfc_w1)],
                  param_vars[static_cast<std::size_t>(idx_.gfc_b1)]));
  v0 = relu(dense(v0, param_vars[static_cast<std::size_t>(idx_.gfc_w2)],
                  param_vars[static_cast<std::size_t>(idx_.gfc_b2)]));

  for (int d = 1; d <= config_.gnn_layers; ++d) {
    auto [v0_next, vk_next] = gnn_layer_vars(tape, param_vars, d, v0, vk);
    v0 = v0_next;
    vk = std::move(vk_next);
  }

  // Phase head.
  Var psi = scale(sigmoid(apply_mlp(tape, param_vars, idx_.head_phase, v0)),
                  2.0 * std::numbers::pi);

  // Beam head: per-user 2M reals, stacked then row-normalized to power P.
  std::vector<Var> beams;
  beams.reserve(static_cast<std::size_t>(num_users));
  for (int k = 0; k < num_users; ++k)
    beams.push_back(apply_mlp(tape, param_vars, idx_.head_beam, vk[static_cast<std::size_t>(k)]));
  Var stacked = num_users == 1 ? beams[0] : concat_cols(beams);

  const Tensor& raw = tape.value(stacked);
  for (int b = 0; b < batch; ++b) {
    double ss = 0.0;
    for (int c = 0; c < raw.cols(); ++c) ss += raw.at(b, c) * raw.at(b, c);
    if (ss == 0.0)
      throw std::domain_error("lacl: zero pre-normalization beam matrix");
  }
  Var sumsq = rows_sumsq(stacked);
  Var norm = ad::sqrt(sumsq);
  Var factor = ad::div(
      tape.constant(Tensor({batch, 1},
                           std::vector<double>(static_cast<std::size_t>(batch),
                                               std::sqrt(power)))),
      norm);
  Var z = rowwise_scale(stacked, factor);
  return {psi, z};
}

ad::Var LaClGnn::build_loss(ad::Tape& tape,
                            const std::vector<ad::Var>& param_vars,
                            const std::vector<const PhaseExample*>& batch,
                            const LinkBudget& budget, double power) const {
  using namespace ad;
  if (batch.empty()) throw std::invalid_argument("lacl loss: empty batch");
  const int num_users = static_cast<int>(batch[0]->omega.size());
  budget.validate(num_users);
  const int n = config_.num_irs_elements();
  const int m = config_.num_ap_antennas;
  const double inv_ln2 = 1.0 / std::numbers::ln2;

  std::vector<const std::vector<FeatureTensor>*> omega_batch;
  omega_batch.reserve(batch.size());
  for (const PhaseExample* ex : batch) omega_batch.push_back(&ex->omega);
  const LaClForwardVars fwd =
      build_forward(tape, param_vars, omega_batch, power);

  std::vector<Var> example_wsr;
  example_wsr.reserve(batch.size());
  for (int b = 0; b < static_cast<int>(batch.size()); ++b) {
    const PhaseExample& ex = *batch[static_cast<std::size_t>(b)];
    Var psi_row = block(fwd.phases, b, 0, 1, n);
    Var c_pair = cpack(ad::cos(psi_row), ad::sin(psi_row));  // (1, N, 2)
    Var beam_row = block(fwd.beam_stack, b, 0, 1, 2 * m * num_users);

    // Effective rows h_k^H = c^T A_k with A_k the cascaded LoS channel.
    std::vector<Var> h(static_cast<std::size_t>(num_users));
    for (int k = 0; k < num_users; ++k) {
      Var a = tape.constant(complex_to_tensor(
          cascaded_los(ex.f_los[static_cast<std::size_t>(k)], ex.g_los)));
      h[static_cast<std::size_t>(k)] = cmatmul(c_pair, a);  // (1, M, 2)
    }
    std::vector<Var> w(static_cast<std::size_t>(num_users));
    for (int j = 0; j < num_users; ++j) {
      Var re = reshape(block(beam_row, 0, j * 2 * m, 1, m), {m, 1});
      Var im = reshape(block(beam_row, 0, j * 2 * m + m, 1, m), {m, 1});
      w[static_cast<std::size_t>(j)] = cpack(re, im);  // (M, 1, 2)
    }

    Var wsr_b;
    for (int k = 0; k < num_users; ++k) {
      Var signal;
      Var interference = tape.constant_scalar(0.0);
      for (int j = 0; j < num_users; ++j) {
        Var p = squared_norm(cmatmul(h[static_cast<std::size_t>(k)],
                                     w[static_cast<std::size_t>(j)]));
        if (j == k)
          signal = p;
        else
          interference = add(interference, p);
      }
      Var gamma = ad::div(signal, add_scalar(interference,
                                             budget.noise_power[k]));
      Var rate = scale(ad::log(add_scalar(gamma, 1.0)),
                       budget.weights[k] * inv_ln2);
      wsr_b = k == 0 ? rate : add(wsr_b, rate);
    }
    example_wsr.push_back(wsr_b);
  }
  return scale(mean_of(example_wsr), -1.0);
}

double LaClGnn::loss(const std::vector<const PhaseExample*>& batch,
                     const LinkBudget& budget, double power) const {
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  return tape.value(build_loss(tape, p, batch, budget, power)).value();
}

PredictiveOutput LaClGnn::forward(const std::vector<FeatureTensor>& omega,
                                  double power) const {
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  const LaClForwardVars out = build_forward(tape, p, {&omega}, power);
  const ad::Tensor& psi = tape.value(out.phases);
  const ad::Tensor& z = tape.value(out.beam_stack);

  const int n = config_.num_irs_elements();
  const int m = config_.num_ap_antennas;
  const int num_users = static_cast<int>(omega.size());
  Eigen::VectorXd phases(n);
  for (int i = 0; i < n; ++i) phases[i] = psi.at(0, i);
  ComplexMatrix w(m, num_users);
  for (int j = 0; j < num_users; ++j)
    for (int r = 0; r < m; ++r)
      w(r, j) = {z.at(0, j * 2 * m + r), z.at(0, j * 2 * m + m + r)};
  return {PhaseConfig(std::move(phases)), BeamMatrix(std::move(w), power)};
}

ad::Tensor LaClGnn::clstm_forward(const FeatureTensor& omega) const {
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  const ad::Var h = clstm_batch(tape, p, {&omega});
  ad::Tensor out({config_.clstm_feature});
  const ad::Tensor& hv = tape.value(h);
  for (int i = 0; i < config_.clstm_feature; ++i) out[i] = hv.at(0, i);
  return out;
}

ad::Tensor LaClGnn::irs_node_init(
    const std::vector<ad::Tensor>& user_features) const {
  if (user_features.empty())
    throw std::invalid_argument("lacl: empty user feature set");
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  std::vector<ad::Var> vk;
  for (const ad::Tensor& f : user_features)
    vk.push_back(tape.constant(
        ad::Tensor({1, static_cast<int>(f.size())},
                   std::vector<double>(f.data(), f.data() + f.size()))));
  ad::Var v0 = mean_of(vk);
  v0 = ad::relu(ad::dense(v0, p[static_cast<std::size_t>(idx_.gfc_w1)],
                          p[static_cast<std::size_t>(idx_.gfc_b1)]));
  v0 = ad::relu(ad::dense(v0, p[static_cast<std::size_t>(idx_.gfc_w2)],
                          p[static_cast<std::size_t>(idx_.gfc_b2)]));
  const ad::Tensor& value = tape.value(v0);
  ad::Tensor out({value.cols()});
  for (int i = 0; i < value.cols(); ++i) out[i] = value.at(0, i);
  return out;
}

std::pair<ad::Tensor, std::vector<ad::Tensor>> LaClGnn::gnn_layer(
    int d, const ad::Tensor& irs_feature,
    const std::vector<ad::Tensor>& user_features) const {
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  const auto lift = [&](const ad::Tensor& t) {
    return tape.constant(
        ad::Tensor({1, static_cast<int>(t.size())},
                   std::vector<double>(t.data(), t.data() + t.size())));
  };
  std::vector<ad::Var> vk;
  for (const ad::Tensor& f : user_features) vk.push_back(lift(f));
  auto [v0_next, vk_next] = gnn_layer_vars(tape, p, d, lift(irs_feature), vk);

  const auto lower = [&](ad::Var v) {
    const ad::Tensor& value = tape.value(v);
    ad::Tensor out({value.cols()});
    for (int i = 0; i < value.cols(); ++i) out[i] = value.at(0, i);
    return out;
  };
  std::vector<ad::Tensor> users_out;
  users_out.reserve(vk_next.size());
  for (ad::Var v : vk_next) users_out.push_back(lower(v));
  return {lower(v0_next), std::move(users_out)};
}

PhaseConfig LaClGnn::generate_phase(const ad::Tensor& irs_feature) const {
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  ad::Var v0 = tape.constant(ad::Tensor(
      {1, static_cast<int>(irs_feature.size())},
      std::vector<double>(irs_feature.data(),
                          irs_feature.data() + irs_feature.size())));
  ad::Var psi = ad::scale(ad::sigmoid(apply_mlp(tape, p, idx_.head_phase, v0)),
                          2.0 * std::numbers::pi);
  const ad::Tensor& value = tape.value(psi);
  Eigen::VectorXd phases(config_.num_irs_elements());
  for (int i = 0; i < phases.size(); ++i) phases[i] = value.at(0, i);
  return PhaseConfig(std::move(phases));
}

BeamMatrix LaClGnn::generate_aux_beam(
    const std::vector<ad::Tensor>& user_features, double power) const {
  if (user_features.empty())
    throw std::invalid_argument("lacl: empty user feature set");
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  const int m = config_.num_ap_antennas;
  const int num_users = static_cast<int>(user_features.size());
  ComplexMatrix w(m, num_users);
  double sumsq = 0.0;
  for (int k = 0; k < num_users; ++k) {
    const ad::Tensor& f = user_features[static_cast<std::size_t>(k)];
    ad::Var vk = tape.constant(
        ad::Tensor({1, static_cast<int>(f.size())},
                   std::vector<double>(f.data(), f.data() + f.size())));
    const ad::Tensor& raw = tape.value(apply_mlp(tape, p, idx_.head_beam, vk));
    for (int r = 0; r < m; ++r) {
      w(r, k) = {raw.at(0, r), raw.at(0, m + r)};
      sumsq += std::norm(w(r, k));
    }
  }
  if (sumsq == 0.0)
    throw std::domain_error("lacl: zero pre-normalization beam matrix");
  w *= std::sqrt(power / sumsq);
  return BeamMatrix(std::move(w), power);
}

void LaClGnn::save(const std::string& path) const {
  std::vector<ad::NamedTensor> named;
  named.push_back(
      {"meta",
       ad::Tensor({11},
                  {kMetaVersion, static_cast<double>(config_.irs_rows),
                   static_cast<double>(config_.irs_cols),
                   static_cast<double>(config_.num_ap_antennas),
                   static_cast<double>(config_.conv_filters),
                   static_cast<double>(config_.conv_kernel),
                   static_cast<double>(config_.pool_window),
                   static_cast<double>(config_.pool_stride),
                   static_cast<double>(config_.clstm_feature),
                   static_cast<double>(config_.gnn_width),
                   static_cast<double>(config_.gnn_layers)})});
  const std::vector<ad::NamedTensor> params = params_.named();
  named.insert(named.end(), params.begin(), params.end());
  ad::save_checkpoint(path, named);
}

LaClGnn LaClGnn::load(const std::string& path) {
  const std::vector<ad::NamedTensor> named = ad::load_checkpoint(path);
  if (named.empty() || named[0].name != "meta" || named[0].tensor.size() != 11)
    throw std::runtime_error("lacl: checkpoint missing meta record");
  const ad::Tensor& meta = named[0].tensor;
  if (meta[0] != kMetaVersion)
    throw std::runtime_error("lacl: unsupported checkpoint meta version");
  LaClGnnConfig cfg;
  cfg.irs_rows = static_cast<int>(meta[1]);
  cfg.irs_cols = static_cast<int>(meta[2]);
  cfg.num_ap_antennas = static_cast<int>(meta[3]);
  cfg.conv_filters = static_cast<int>(meta[4]);
  cfg.conv_kernel = static_cast<int>(meta[5]);
  cfg.pool_window = static_cast<int>(meta[6]);
  cfg.pool_stride = static_cast<int>(meta[7]);
  cfg.clstm_feature = static_cast<int>(meta[8]);
  cfg.gnn_width = static_cast<int>(meta[9]);
  cfg.gnn_layers = static_cast<int>(meta[10]);
  LaClGnn net(cfg, 0);
  net.params_.load_named(named);
  return net;
}

}  // namespace irsim::nn
