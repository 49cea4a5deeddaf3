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

#include "irsim/nn/ia_fnn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsim::nn {

namespace {

constexpr double kMetaVersion = 1.0;

}  // namespace

void IaFnnConfig::validate() const {
  if (num_ap_antennas < 1)
    throw std::invalid_argument("iafnn: num_ap_antennas must be >= 1");
  if (fc1_w1 < 1 || fc1_w2 < 1 || fc1_w3 < 1 || fc2_w1 < 1 || fc2_w2 < 1)
    throw std::invalid_argument("iafnn: widths must be >= 1");
}

IcsiInput IcsiInput::from_channels(const ComplexMatrix& h_rows) {
  const int num_users = static_cast<int>(h_rows.rows());
  const int m = static_cast<int>(h_rows.cols());
  if (num_users < 1 || m < 1)
    throw std::invalid_argument("icsi input: empty channel matrix");
  ad::Tensor data({m, num_users, 2});
  for (int r = 0; r < m; ++r)
    for (int k = 0; k < num_users; ++k) {
      const std::int64_t base =
          (static_cast<std::int64_t>(r) * num_users + k) * 2;
      data[base] = h_rows(k, r).real();
      data[base + 1] = h_rows(k, r).imag();
    }
  return IcsiInput{std::move(data)};
}

ComplexMatrix IcsiInput::to_channels() const {
  const int m = num_antennas();
  const int num_users = this->num_users();
  ComplexMatrix h(num_users, m);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k < num_users; ++k) {
      const std::int64_t base =
          (static_cast<std::int64_t>(r) * num_users + k) * 2;
      h(k, r) = {data[base], data[base + 1]};
    }
  return h;
}

IaFnn::IaFnn(IaFnnConfig config, std::uint64_t seed) : config_(config) {
  config_.validate();
  build_params(seed);
}

void IaFnn::set_input_scale(double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("iafnn: input scale must be finite and > 0");
  input_scale_ = s;
}

void IaFnn::build_params(std::uint64_t seed) {
  Rng rng(seed);
  const int in = 2 * config_.num_ap_antennas;
  const int ctx = 3 * config_.fc1_w3;  // own + mean + max
  idx_.fc1_w1 = params_.add("fc1.w1",
                            kaiming_uniform({in, config_.fc1_w1}, in, rng));
  idx_.fc1_b1 = params_.add("fc1.b1", ad::Tensor({config_.fc1_w1}));
  idx_.fc1_w2 = params_.add(
      "fc1.w2",
      kaiming_uniform({config_.fc1_w1, config_.fc1_w2}, config_.fc1_w1, rng));
  idx_.fc1_b2 = params_.add("fc1.b2", ad::Tensor({config_.fc1_w2}));
  idx_.fc1_w3 = params_.add(
      "fc1.w3", xavier_uniform({config_.fc1_w2, config_.fc1_w3}, config_.fc1_w2,
                               config_.fc1_w3, rng));
  idx_.fc1_b3 = params_.add("fc1.b3", ad::Tensor({config_.fc1_w3}));

  idx_.fc2_w1 = params_.add("fc2.w1",
                            kaiming_uniform({ctx, config_.fc2_w1}, ctx, rng));
  idx_.fc2_b1 = params_.add("fc2.b1", ad::Tensor({config_.fc2_w1}));
  idx_.fc2_w2 = params_.add(
      "fc2.w2",
      kaiming_uniform({config_.fc2_w1, config_.fc2_w2}, config_.fc2_w1, rng));
  idx_.fc2_b2 = params_.add("fc2.b2", ad::Tensor({config_.fc2_w2}));
  idx_.fc2_w3 = params_.add(
      "fc2.w3",
      xavier_uniform({config_.fc2_w2, 2 * config_.num_ap_antennas},
                     config_.fc2_w2, 2 * config_.num_ap_antennas, rng));
  idx_.fc2_b3 =
      params_.add("fc2.b3", ad::Tensor({2 * config_.num_ap_antennas}));
}

ad::Var IaFnn::build_forward(
    ad::Tape& tape, const std::vector<ad::Var>& p,
    const std::vector<const ComplexMatrix*>& h_hat_batch, double power) const {
  using namespace ad;
  if (h_hat_batch.empty()) throw std::invalid_argument("iafnn: empty batch");
  if (power <= 0.0) throw std::invalid_argument("iafnn: power must be > 0");
  const int batch = static_cast<int>(h_hat_batch.size());
  const int m = config_.num_ap_antennas;
  const int num_users = static_cast<int>(h_hat_batch[0]->rows());
  for (const ComplexMatrix* h : h_hat_batch)
    if (h->rows() != num_users || h->cols() != m)
      throw std::invalid_argument("iafnn: channel batch shape mismatch");

  // Per-user branch inputs (B, 2M): [Re(h_k); Im(h_k)] times the calibration
  // scale.
  std::vector<Var> feats;
  feats.reserve(static_cast<std::size_t>(num_users));
  for (int k = 0; k < num_users; ++k) {
    Tensor x({batch, 2 * m});
    for (int b = 0; b < batch; ++b)
      for (int c = 0; c < m; ++c) {
        const std::complex<double> v = (*h_hat_batch[static_cast<std::size_t>(b)])(k, c);
        x.at(b, c) = input_scale_ * v.real();
        x.at(b, m + c) = input_scale_ * v.imag();
      }
    Var f = relu(dense(tape.constant(std::move(x)),
                       p[static_cast<std::size_t>(idx_.fc1_w1)],
                       p[static_cast<std::size_t>(idx_.fc1_b1)]));
    f = relu(dense(f, p[static_cast<std::size_t>(idx_.fc1_w2)],
                   p[static_cast<std::size_t>(idx_.fc1_b2)]));
    f = dense(f, p[static_cast<std::size_t>(idx_.fc1_w3)],
              p[static_cast<std::size_t>(idx_.fc1_b3)]);
    feats.push_back(f);
  }

  const Var mean_ctx = mean_of(feats);
  const Var max_ctx = max_of(feats);

  std::vector<Var> outs;
  outs.reserve(static_cast<std::size_t>(num_users));
  for (int k = 0; k < num_users; ++k) {
    Var x = concat_cols({feats[static_cast<std::size_t>(k)], mean_ctx, max_ctx});
    x = relu(dense(x, p[static_cast<std::size_t>(idx_.fc2_w1)],
                   p[static_cast<std::size_t>(idx_.fc2_b1)]));
    x = relu(dense(x, p[static_cast<std::size_t>(idx_.fc2_w2)],
                   p[static_cast<std::size_t>(idx_.fc2_b2)]));
    x = dense(x, p[static_cast<std::size_t>(idx_.fc2_w3)],
              p[static_cast<std::size_t>(idx_.fc2_b3)]);
    outs.push_back(x);
  }
  Var stacked = num_users == 1 ? outs[0] : concat_cols(outs);

  const Tensor& raw = tape.value(stacked);
  for (int b = 0; b < batch; ++b) {
    double ss = 0.0;
    for (int c = 0; c < raw.cols(); ++c) ss += raw.at(b, c) * raw.at(b, c);
    if (ss == 0.0)
      throw std::domain_error("iafnn: zero pre-normalization beam matrix");
  }
  Var factor = ad::div(
      tape.constant(Tensor({batch, 1},
                           std::vector<double>(static_cast<std::size_t>(batch),
                                               std::sqrt(power)))),
      ad::sqrt(rows_sumsq(stacked)));
  return rowwise_scale(stacked, factor);
}

ad::Var IaFnn::build_loss(ad::Tape& tape, const std::vector<ad::Var>& p,
                          const std::vector<const BeamExample*>& batch,
                          const LinkBudget& budget, double power) const {
  using namespace ad;
  if (batch.empty()) throw std::invalid_argument("iafnn loss: empty batch");
  const int num_users = static_cast<int>(batch[0]->h_true.rows());
  budget.validate(num_users);
  const int m = config_.num_ap_antennas;
  const double inv_ln2 = 1.0 / std::numbers::ln2;

  std::vector<const ComplexMatrix*> h_hat_batch;
  h_hat_batch.reserve(batch.size());
  for (const BeamExample* ex : batch) h_hat_batch.push_back(&ex->h_hat);
  const Var stack = build_forward(tape, p, h_hat_batch, power);

  std::vector<Var> example_wsr;
  example_wsr.reserve(batch.size());
  for (int b = 0; b < static_cast<int>(batch.size()); ++b) {
    const BeamExample& ex = *batch[static_cast<std::size_t>(b)];
    Var beam_row = block(stack, b, 0, 1, 2 * m * num_users);
    std::vector<Var> w(static_cast<std::size_t>(num_users));
    for (int j = 0; j < num_users; ++j) {
      Var re = reshape(block(beam_row, 0, j * 2 * m, 1, m), {m, 1});
      Var im = reshape(block(beam_row, 0, j * 2 * m + m, 1, m), {m, 1});
      w[static_cast<std::size_t>(j)] = cpack(re, im);
    }
    std::vector<Var> h(static_cast<std::size_t>(num_users));
    for (int k = 0; k < num_users; ++k) {
      // True channel row h_k^H as a constant (1, M, 2).
      ad::Tensor hk({1, m, 2});
      for (int c = 0; c < m; ++c) {
        hk[2 * c] = ex.h_true(k, c).real();
        hk[2 * c + 1] = ex.h_true(k, c).imag();
      }
      h[static_cast<std::size_t>(k)] = tape.constant(std::move(hk));
    }

    Var wsr_b;
    for (int k = 0; k < num_users; ++k) {
      Var signal;
      Var interference = tape.constant_scalar(0.0);
      for (int j = 0; j < num_users; ++j) {
        Var pkj = squared_norm(cmatmul(h[static_cast<std::size_t>(k)],
                                       w[static_cast<std::size_t>(j)]));
        if (j == k)
          signal = pkj;
        else
          interference = add(interference, pkj);
      }
      Var gamma =
          ad::div(signal, add_scalar(interference, budget.noise_power[k]));
      Var rate = scale(ad::log(add_scalar(gamma, 1.0)),
                       budget.weights[k] * inv_ln2);
      wsr_b = k == 0 ? rate : add(wsr_b, rate);
    }
    example_wsr.push_back(wsr_b);
  }
  return scale(mean_of(example_wsr), -1.0);
}

double IaFnn::loss(const std::vector<const BeamExample*>& batch,
                   const LinkBudget& budget, double power) const {
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  return tape.value(build_loss(tape, p, batch, budget, power)).value();
}

BeamMatrix IaFnn::forward(const IcsiInput& input, double power) const {
  if (input.num_antennas() != config_.num_ap_antennas)
    throw std::invalid_argument("iafnn: antenna count mismatch");
  ad::Tape tape;
  const std::vector<ad::Var> p = place_params(tape, false);
  const ComplexMatrix h = input.to_channels();
  const ad::Var stack = build_forward(tape, p, {&h}, power);
  const ad::Tensor& z = tape.value(stack);
  const int m = config_.num_ap_antennas;
  const int num_users = input.num_users();
  ComplexMatrix w(m, num_users);
  for (int j = 0; j < num_users; ++j)
    for (int r = 0; r < m; ++r)
      w(r, j) = {z.at(0, j * 2 * m + r), z.at(0, j * 2 * m + m + r)};
  return BeamMatrix(std::move(w), power);
}

void IaFnn::save(const std::string& path) const {
  std::vector<ad::NamedTensor> named;
  named.push_back(
      {"meta",
       ad::Tensor({8}, {kMetaVersion,
                        static_cast<double>(config_.num_ap_antennas),
                        static_cast<double>(config_.fc1_w1),
                        static_cast<double>(config_.fc1_w2),
                        static_cast<double>(config_.fc1_w3),
                        static_cast<double>(config_.fc2_w1),
                        static_cast<double>(config_.fc2_w2), input_scale_})});
  const std::vector<ad::NamedTensor> params = params_.named();
  named.insert(named.end(), params.begin(), params.end());
  ad::save_checkpoint(path, named);
}

IaFnn IaFnn::load(const std::string& path) {
  const std::vector<ad::NamedTensor> named = ad::load_checkpoint(path);
  if (named.empty() || named[0].name != "meta" || named[0].tensor.size() != 8)
    throw std::runtime_error("iafnn: checkpoint missing meta record");
  const ad::Tensor& meta = named[0].tensor;
  if (meta[0] != kMetaVersion)
    throw std::runtime_error("iafnn: unsupported checkpoint meta version");
  IaFnnConfig cfg;
  cfg.num_ap_antennas = static_cast<int>(meta[1]);
  cfg.fc1_w1 = static_cast<int>(meta[2]);
  cfg.fc1_w2 = static_cast<int>(meta[3]);
  cfg.fc1_w3 = static_cast<int>(meta[4]);
  cfg.fc2_w1 = static_cast<int>(meta[5]);
  cfg.fc2_w2 = static_cast<int>(meta[6]);
  IaFnn net(cfg, 0);
  net.input_scale_ = meta[7];
  net.params_.load_named(named);
  return net;
}

}  // namespace irsim::nn
