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

#include "irsim/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <thread>

#include "irsim/baselines.hpp"
#include "irsim/train/trainer.hpp"

namespace irsim::harness {

namespace {

std::string resolve_checkpoint(const std::string& pattern,
                               const std::string& variable, double value) {
  std::string path = pattern;
  const std::string token = "{tau}";
  const auto pos = path.find(token);
  if (pos != std::string::npos) {
    if (variable != "tau")
      throw std::runtime_error(
          "experiment: {tau} checkpoint pattern outside a tau sweep");
    path.replace(pos, token.size(), std::to_string(static_cast<int>(value)));
  }
  return path;
}

PilotScheme pilot_scheme_for(const std::string& scheme) {
  // Full-CSI estimation backs the FP benchmarks; the predictive protocol and
  // plain MRT only estimate the K effective MISO channels.
  if (scheme == kSchemeFpIcsi || scheme == kSchemeNaiveFp)
    return PilotScheme::kFullIcsi;
  return PilotScheme::kPredictive;
}

struct CellContext {
  ScenarioConfig scenario;
  ProtocolParams protocol;
  double coherence = 0.0;
  ComplexMatrix g_bar;
  double alpha_g = 0.0;
  DlpbNets nets;
  int slots = 0;       // simulated slots; evaluation happens at the last one
  int eval_slot = 0;
  double sweep_value = 0.0;
};

// All channel quantities of one trial, drawn in a fixed order so the draw
// sequence does not depend on the scheme list.
struct TrialChannels {
  ChannelRealization eval;
  ChannelRealization stale;
  std::vector<std::vector<nn::FeatureTensor>> omega;  // [1][K] feature set
};

TrialChannels simulate_trial(const CellContext& ctx, int stale_lag, Rng& rng) {
  const ScenarioConfig& sc = ctx.scenario;
  const int tau = sc.history_len;

  std::vector<UserTrajectory> trajs;
  trajs.reserve(static_cast<std::size_t>(sc.num_users));
  for (int k = 0; k < sc.num_users; ++k) {
    const Vec3 anchor = sc.area.sample(rng);
    trajs.push_back(
        simulate_trajectory_anchored(k, anchor, sc.mobility, ctx.slots, rng));
  }

  const auto locs_at = [&](int slot) {
    std::vector<Vec3> locs;
    locs.reserve(trajs.size());
    for (const UserTrajectory& t : trajs)
      locs.push_back(t.locations[static_cast<std::size_t>(slot)]);
    return locs;
  };

  TrialChannels out;
  {
    const std::vector<Vec3> locs = locs_at(ctx.eval_slot - stale_lag);
    out.stale = sample_channels(assemble_los(sc.geometry, locs), sc.rician,
                                ctx.alpha_g, scenario_pathloss_users(sc, locs),
                                rng);
  }
  {
    const std::vector<Vec3> locs = locs_at(ctx.eval_slot);
    out.eval = sample_channels(assemble_los(sc.geometry, locs), sc.rician,
                               ctx.alpha_g, scenario_pathloss_users(sc, locs),
                               rng);
  }

  std::vector<nn::FeatureTensor> omega;
  omega.reserve(static_cast<std::size_t>(sc.num_users));
  for (int k = 0; k < sc.num_users; ++k) {
    std::vector<ComplexMatrix> hist;
    hist.reserve(static_cast<std::size_t>(tau));
    for (int s = ctx.eval_slot - tau; s < ctx.eval_slot; ++s)
      hist.push_back(cascaded_los(
          los_irs_user(sc.geometry,
                       trajs[static_cast<std::size_t>(k)]
                           .locations[static_cast<std::size_t>(s)]),
          ctx.g_bar));
    omega.push_back(nn::FeatureTensor::from_history(hist));
  }
  out.omega.push_back(std::move(omega));
  return out;
}

ComplexMatrix effective_rows(const ChannelRealization& real,
                             const PhaseConfig& phases) {
  ComplexMatrix h(real.num_users(), real.g.cols());
  for (int k = 0; k < real.num_users(); ++k)
    h.row(k) =
        effective_miso(real.f[static_cast<std::size_t>(k)], phases, real.g);
  return h;
}

Eigen::VectorXd sinrs_from_rows(const ComplexMatrix& h_rows,
                                const BeamMatrix& beams,
                                const LinkBudget& budget) {
  const int num_users = static_cast<int>(h_rows.rows());
  Eigen::VectorXd gammas(num_users);
  for (int k = 0; k < num_users; ++k) {
    double signal = 0.0;
    double interference = 0.0;
    for (int j = 0; j < num_users; ++j) {
      const double p = std::norm((h_rows.row(k) * beams.matrix().col(j))(0));
      if (j == k)
        signal = p;
      else
        interference += p;
    }
    gammas[k] = signal / (interference + budget.noise_power[k]);
  }
  return gammas;
}

TrialResult run_scheme(const CellContext& ctx, const ExperimentConfig& cfg,
                       const std::string& scheme, const TrialChannels& chans,
                       int trial, Rng& rng_phase, Rng& rng_ce) {
  const ScenarioConfig& sc = ctx.scenario;
  TrialResult row;
  row.scheme = scheme;
  row.sweep_value = ctx.sweep_value;
  row.trial = trial;

  Eigen::VectorXd gammas;
  if (scheme == kSchemeRandomMrt) {
    const PhaseConfig phases =
        random_phase(sc.geometry.num_irs_elements(), rng_phase);
    const ComplexMatrix h = effective_rows(chans.eval, phases);
    const BeamMatrix beams = mrt(h, sc.power);
    gammas = sinrs_from_rows(h, beams, sc.budget);
  } else if (scheme == kSchemeFpIcsi) {
    const FpOptions opts{cfg.fp_tolerance, cfg.fp_max_iterations};
    const FpResult fp = fp_wsr_maximize(chans.eval, sc.budget, sc.power, opts);
    const ComplexMatrix h = effective_rows(chans.eval, fp.phases);
    gammas = sinrs_from_rows(h, fp.beams, sc.budget);
    row.solver_iterations = fp.trace.iterations();
  } else if (scheme == kSchemeNaiveFp) {
    const FpOptions opts{cfg.fp_tolerance, cfg.fp_max_iterations};
    const NaiveFpResult result =
        naive_fp(chans.stale, chans.eval, sc.budget, sc.power, opts);
    const ComplexMatrix h = effective_rows(chans.eval, result.phases);
    gammas = sinrs_from_rows(h, result.beams, sc.budget);
    row.solver_iterations = result.trace.iterations();
  } else if (scheme == kSchemeDlpb) {
    const PhaseConfig phases =
        train::predict_online(*ctx.nets.phase, chans.omega[0]);
    const ComplexMatrix h_true = effective_rows(chans.eval, phases);
    ComplexMatrix h_hat = h_true;
    if (sc.ce.nmse > 0.0) {
      for (int k = 0; k < sc.num_users; ++k) {
        const ComplexVector h_col = h_true.row(k).adjoint();
        const double ref = h_col.squaredNorm();
        h_hat.row(k) = apply_ce_error(h_col, sc.ce, ref, rng_ce).adjoint();
      }
    }
    const BeamMatrix beams =
        train::beamform_online(*ctx.nets.beam, h_hat, sc.power);
    gammas = sinrs_from_rows(h_true, beams, sc.budget);
  } else {
    throw std::invalid_argument("experiment: unknown scheme " + scheme);
  }

  row.wsr = wsr(gammas, sc.budget.weights);
  row.sinr.assign(gammas.data(), gammas.data() + gammas.size());
  row.protocol_wsr =
      protocol_throughput(row.wsr, sc.num_users,
                          sc.geometry.num_irs_elements(),
                          ctx.protocol.symbol_duration, ctx.coherence,
                          pilot_scheme_for(scheme))
          .rate;
  return row;
}

}  // namespace

std::vector<CellStats> ResultTable::summarize() const {
  std::vector<CellStats> cells;
  const auto cell_for = [&](const TrialResult& row) -> CellStats& {
    for (CellStats& c : cells)
      if (c.scheme == row.scheme && c.sweep_value == row.sweep_value) return c;
    cells.push_back({row.scheme, row.sweep_value, 0, 0, 0, 0, 0});
    return cells.back();
  };
  // First pass: means.
  for (const TrialResult& row : rows) {
    CellStats& c = cell_for(row);
    ++c.trials;
    c.mean_wsr += row.wsr;
    c.mean_protocol_wsr += row.protocol_wsr;
  }
  for (CellStats& c : cells) {
    c.mean_wsr /= c.trials;
    c.mean_protocol_wsr /= c.trials;
  }
  // Second pass: standard errors.
  for (const TrialResult& row : rows) {
    CellStats& c = cell_for(row);
    c.stderr_wsr += (row.wsr - c.mean_wsr) * (row.wsr - c.mean_wsr);
    c.stderr_protocol_wsr += (row.protocol_wsr - c.mean_protocol_wsr) *
                             (row.protocol_wsr - c.mean_protocol_wsr);
  }
  for (CellStats& c : cells) {
    if (c.trials > 1) {
      c.stderr_wsr = std::sqrt(c.stderr_wsr / (c.trials - 1)) /
                     std::sqrt(static_cast<double>(c.trials));
      c.stderr_protocol_wsr =
          std::sqrt(c.stderr_protocol_wsr / (c.trials - 1)) /
          std::sqrt(static_cast<double>(c.trials));
    } else {
      c.stderr_wsr = 0.0;
      c.stderr_protocol_wsr = 0.0;
    }
  }
  return cells;
}

const CellStats* ResultTable::find_cell(const std::vector<CellStats>& cells,
                                        const std::string& scheme,
                                        double sweep_value) const {
  for (const CellStats& c : cells)
    if (c.scheme == scheme && c.sweep_value == sweep_value) return &c;
  return nullptr;
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& scenario,
                                 const std::string& variable, double value) {
  ScenarioConfig out = scenario;
  if (variable == "beta_db") {
    const double beta = db_to_linear(value);
    out.rician.rician_ap_irs = beta;
    out.rician.rician_irs_user.assign(
        static_cast<std::size_t>(out.num_users), beta);
  } else if (variable == "power_dbm") {
    out.power = dbm_to_watts(value);
  } else if (variable == "users") {
    out.set_num_users(static_cast<int>(value));
  } else if (variable == "velocity_kmh") {
    out.mobility.speed_min = kmh_to_mps(value);
    out.mobility.speed_max = kmh_to_mps(value);
  } else if (variable == "tau") {
    out.history_len = static_cast<int>(value);
  } else {
    throw std::invalid_argument("experiment: unknown sweep variable " +
                                variable);
  }
  out.validate();
  return out;
}

ResultTable run_monte_carlo(const ExperimentConfig& cfg,
                            const DlpbProvider& provider) {
  cfg.validate();
  const bool wants_dlpb =
      std::find(cfg.schemes.begin(), cfg.schemes.end(), kSchemeDlpb) !=
      cfg.schemes.end();

  // Per-sweep checkpoint loading when no provider is supplied.
  std::vector<std::unique_ptr<nn::LaClGnn>> loaded_phase;
  std::vector<std::unique_ptr<nn::IaFnn>> loaded_beam;
  if (wants_dlpb && !provider) {
    if (cfg.phase_checkpoint.empty() || cfg.beam_checkpoint.empty())
      throw std::runtime_error(
          "experiment: dlpb scheme requires phase and beam checkpoints");
    for (std::size_t si = 0; si < cfg.sweep_values.size(); ++si) {
      const std::string phase_path = resolve_checkpoint(
          cfg.phase_checkpoint, cfg.sweep_variable, cfg.sweep_values[si]);
      const std::string beam_path = resolve_checkpoint(
          cfg.beam_checkpoint, cfg.sweep_variable, cfg.sweep_values[si]);
      if (!std::filesystem::exists(phase_path) ||
          !std::filesystem::exists(beam_path))
        throw std::runtime_error("experiment: missing checkpoint " +
                                 phase_path + " or " + beam_path);
      loaded_phase.push_back(
          std::make_unique<nn::LaClGnn>(nn::LaClGnn::load(phase_path)));
      loaded_beam.push_back(
          std::make_unique<nn::IaFnn>(nn::IaFnn::load(beam_path)));
    }
  }

  ResultTable table;
  for (std::size_t si = 0; si < cfg.sweep_values.size(); ++si) {
    CellContext ctx;
    ctx.sweep_value = cfg.sweep_values[si];
    ctx.scenario =
        apply_sweep_value(cfg.scenario, cfg.sweep_variable, ctx.sweep_value);
    ctx.protocol = cfg.protocol;
    if (cfg.sweep_variable == "velocity_kmh")
      ctx.protocol.avg_speed = kmh_to_mps(ctx.sweep_value);
    ctx.coherence = coherence_time(ctx.protocol);
    ctx.g_bar = los_ap_irs(ctx.scenario.geometry);
    ctx.alpha_g = scenario_pathloss_ap_irs(ctx.scenario);
    ctx.slots = std::max(ctx.scenario.history_len, cfg.stale_lag) + 1;
    ctx.eval_slot = ctx.slots - 1;
    if (wants_dlpb) {
      ctx.nets = provider ? provider(static_cast<int>(si))
                          : DlpbNets{loaded_phase[si].get(),
                                     loaded_beam[si].get()};
      if (ctx.nets.phase == nullptr || ctx.nets.beam == nullptr)
        throw std::runtime_error("experiment: dlpb networks unavailable");
    }

    std::vector<TrialResult> cell_rows(
        static_cast<std::size_t>(cfg.trials) * cfg.schemes.size());
    std::atomic<int> next_trial{0};
    const auto worker = [&]() {
      for (;;) {
        const int trial = next_trial.fetch_add(1);
        if (trial >= cfg.trials) break;
        Rng trial_rng = Rng::derive(cfg.seed, si, static_cast<std::uint64_t>(trial));
        Rng rng_channels(trial_rng.next_u64());
        Rng rng_phase(trial_rng.next_u64());
        Rng rng_ce(trial_rng.next_u64());

        const TrialChannels chans =
            simulate_trial(ctx, cfg.stale_lag, rng_channels);
        for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
          const auto start = std::chrono::steady_clock::now();
          TrialResult row = run_scheme(ctx, cfg, cfg.schemes[s], chans, trial,
                                       rng_phase, rng_ce);
          row.wall_time_s =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
          cell_rows[static_cast<std::size_t>(trial) * cfg.schemes.size() + s] =
              std::move(row);
        }
      }
    };

    const int num_threads = std::max(1, cfg.threads);
    if (num_threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(num_threads));
      for (int t = 0; t < num_threads; ++t) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }
    table.rows.insert(table.rows.end(),
                      std::make_move_iterator(cell_rows.begin()),
                      std::make_move_iterator(cell_rows.end()));
  }
  return table;
}

ResultTable scalability_eval(const ExperimentConfig& base,
                             const nn::LaClGnn& phase_net,
                             const nn::IaFnn& beam_net,
                             const std::vector<int>& k_values) {
  if (k_values.empty())
    throw std::invalid_argument("scalability: empty user-count list");
  ExperimentConfig cfg = base;
  cfg.sweep_variable = "users";
  cfg.sweep_values.clear();
  for (int k : k_values) cfg.sweep_values.push_back(static_cast<double>(k));
  const DlpbNets nets{&phase_net, &beam_net};
  return run_monte_carlo(cfg, [&nets](int) { return nets; });
}

}  // namespace irsim::harness
