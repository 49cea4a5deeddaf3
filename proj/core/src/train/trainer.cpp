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

#include "irsim/train/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "irsim/ad/optimizer.hpp"

namespace irsim::train {

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t count, Rng& rng) {
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = i;
  for (std::size_t i = count; i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(idx[i - 1], idx[j < i ? j : i - 1]);
  }
  return idx;
}

void validate_train_config(const TrainConfig& cfg) {
  if (cfg.epochs < 1 || cfg.batch_size < 1)
    throw std::invalid_argument("train: epochs/batch_size must be >= 1");
  if (cfg.learning_rate <= 0.0)
    throw std::invalid_argument("train: learning rate must be > 0");
  if (cfg.train_fraction <= 0.0 || cfg.train_fraction > 1.0)
    throw std::invalid_argument("train: train_fraction must be in (0, 1]");
}

// Shared mini-batch loop. `eval` returns the mean loss of an index list;
// `step` runs one batch and returns its loss.
template <typename EvalFn, typename StepFn>
TrainRecord run_training(std::size_t count, const TrainConfig& cfg,
                         const EvalFn& eval, const StepFn& step) {
  Rng rng(cfg.seed);
  std::vector<std::size_t> order = shuffled_indices(count, rng);
  const std::size_t train_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(
             cfg.train_fraction * static_cast<double>(count))));
  std::vector<std::size_t> train_idx(order.begin(),
                                     order.begin() + static_cast<std::ptrdiff_t>(train_count));
  std::vector<std::size_t> held_idx(order.begin() + static_cast<std::ptrdiff_t>(train_count),
                                    order.end());

  TrainRecord record;
  record.initial_loss = eval(train_idx);
  record.heldout_initial = held_idx.empty() ? 0.0 : eval(held_idx);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<std::size_t> epoch_order = train_idx;
    {
      // In-place Fisher-Yates with the epoch stream.
      for (std::size_t i = epoch_order.size(); i > 1; --i) {
        const std::size_t j =
            static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
        std::swap(epoch_order[i - 1], epoch_order[j < i ? j : i - 1]);
      }
    }
    double loss_sum = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < epoch_order.size();
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop = std::min(
          epoch_order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const std::vector<std::size_t> batch(epoch_order.begin() + static_cast<std::ptrdiff_t>(start),
                                           epoch_order.begin() + static_cast<std::ptrdiff_t>(stop));
      const double loss = step(batch);
      if (!std::isfinite(loss)) {
        record.diverged = true;
        record.final_loss = loss;
        return record;
      }
      loss_sum += loss * static_cast<double>(batch.size());
      seen += batch.size();
    }
    record.epoch_loss.push_back(loss_sum / static_cast<double>(seen));
  }

  record.final_loss = eval(train_idx);
  record.heldout_final = held_idx.empty() ? 0.0 : eval(held_idx);
  return record;
}

}  // namespace

std::string TrainRecord::to_csv() const {
  std::string out = "epoch,loss\n";
  char row[64];
  std::snprintf(row, sizeof(row), "0,%.17g\n", initial_loss);
  out += row;
  for (std::size_t i = 0; i < epoch_loss.size(); ++i) {
    std::snprintf(row, sizeof(row), "%zu,%.17g\n", i + 1, epoch_loss[i]);
    out += row;
  }
  return out;
}

TrainRecord train_lacl(nn::LaClGnn& net, const PhaseDataset& dataset,
                       const TrainConfig& cfg) {
  validate_train_config(cfg);
  if (dataset.examples.empty())
    throw std::invalid_argument("train_lacl: empty dataset");
  const LinkBudget& budget = dataset.scenario.budget;
  const double power = dataset.scenario.power;

  ad::AdamState opt(net.params().tensors(), {cfg.learning_rate});

  const auto gather = [&](const std::vector<std::size_t>& idx) {
    std::vector<const nn::PhaseExample*> batch;
    batch.reserve(idx.size());
    for (std::size_t i : idx) batch.push_back(&dataset.examples[i]);
    return batch;
  };
  const auto eval = [&](const std::vector<std::size_t>& idx) {
    double sum = 0.0;
    for (std::size_t start = 0; start < idx.size();
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop =
          std::min(idx.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const std::vector<std::size_t> chunk(idx.begin() + static_cast<std::ptrdiff_t>(start),
                                           idx.begin() + static_cast<std::ptrdiff_t>(stop));
      sum += net.loss(gather(chunk), budget, power) *
             static_cast<double>(chunk.size());
    }
    return sum / static_cast<double>(idx.size());
  };
  const auto step = [&](const std::vector<std::size_t>& idx) {
    ad::Tape tape;
    const std::vector<ad::Var> pv = net.place_params(tape, true);
    const ad::Var loss = net.build_loss(tape, pv, gather(idx), budget, power);
    const double value = tape.value(loss).value();
    if (!std::isfinite(value)) return value;
    const std::vector<ad::Tensor> grads = tape.backprop(loss, pv);
    opt.step(net.params().tensors(), grads);
    return value;
  };

  return run_training(dataset.examples.size(), cfg, eval, step);
}

TrainRecord train_iafnn(nn::IaFnn& net, const BeamDataset& dataset,
                        const TrainConfig& cfg) {
  validate_train_config(cfg);
  if (dataset.examples.empty())
    throw std::invalid_argument("train_iafnn: empty dataset");
  const LinkBudget& budget = dataset.scenario.budget;
  const double power = dataset.scenario.power;

  // Input calibration: unit mean-square channel entry over the dataset.
  double mean_sq = 0.0;
  std::int64_t entries = 0;
  for (const nn::BeamExample& ex : dataset.examples) {
    mean_sq += ex.h_hat.squaredNorm();
    entries += ex.h_hat.size();
  }
  mean_sq /= static_cast<double>(entries);
  if (mean_sq > 0.0) net.set_input_scale(1.0 / std::sqrt(mean_sq));

  ad::AdamState opt(net.params().tensors(), {cfg.learning_rate});

  const auto gather = [&](const std::vector<std::size_t>& idx) {
    std::vector<const nn::BeamExample*> batch;
    batch.reserve(idx.size());
    for (std::size_t i : idx) batch.push_back(&dataset.examples[i]);
    return batch;
  };
  const auto eval = [&](const std::vector<std::size_t>& idx) {
    double sum = 0.0;
    for (std::size_t start = 0; start < idx.size();
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop =
          std::min(idx.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const std::vector<std::size_t> chunk(idx.begin() + static_cast<std::ptrdiff_t>(start),
                                           idx.begin() + static_cast<std::ptrdiff_t>(stop));
      sum += net.loss(gather(chunk), budget, power) *
             static_cast<double>(chunk.size());
    }
    return sum / static_cast<double>(idx.size());
  };
  const auto step = [&](const std::vector<std::size_t>& idx) {
    ad::Tape tape;
    const std::vector<ad::Var> pv = net.place_params(tape, true);
    const ad::Var loss = net.build_loss(tape, pv, gather(idx), budget, power);
    const double value = tape.value(loss).value();
    if (!std::isfinite(value)) return value;
    const std::vector<ad::Tensor> grads = tape.backprop(loss, pv);
    opt.step(net.params().tensors(), grads);
    return value;
  };

  return run_training(dataset.examples.size(), cfg, eval, step);
}

PhaseConfig predict_online(const nn::LaClGnn& net,
                           const std::vector<nn::FeatureTensor>& histories) {
  if (histories.empty())
    throw std::invalid_argument("predict_online: no user histories");
  const int tau = histories[0].history_len();
  if (tau < 1) throw std::invalid_argument("predict_online: empty history");
  for (const nn::FeatureTensor& ft : histories)
    if (ft.history_len() != tau)
      throw std::invalid_argument("predict_online: unequal history lengths");
  // The phase output does not depend on the power scale used for the
  // auxiliary beams.
  return net.forward(histories, 1.0).phases;
}

BeamMatrix beamform_online(const nn::IaFnn& net,
                           const ComplexMatrix& h_hat_rows, double power) {
  return net.forward(nn::IcsiInput::from_channels(h_hat_rows), power);
}

}  // namespace irsim::train
