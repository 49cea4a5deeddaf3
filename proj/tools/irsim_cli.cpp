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

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "irsim/harness/config.hpp"
#include "irsim/harness/experiment.hpp"
#include "irsim/harness/report.hpp"
#include "irsim/train/dataset.hpp"
#include "irsim/train/trainer.hpp"
#include "irsim/version.hpp"

namespace {

using irsim::ScenarioConfig;
using irsim::harness::ExperimentConfig;

struct ScenarioOpts {
  std::string config_path;
  bool paper = false;
  int tau = -1;
  int users = -1;
  double beta_db = std::numeric_limits<double>::quiet_NaN();
  double speed_min_kmh = -1.0;
  double speed_max_kmh = -1.0;
};

void add_scenario_options(CLI::App* cmd, ScenarioOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "Experiment config JSON; its scenario section is used");
  cmd->add_flag("--paper", opts.paper, "Full-size scenario preset");
  cmd->add_option("--tau", opts.tau, "History length override");
  cmd->add_option("--users", opts.users, "User count override");
  cmd->add_option("--beta-db", opts.beta_db, "Rician factor override (dB)");
  cmd->add_option("--speed-min-kmh", opts.speed_min_kmh,
                  "Minimum user speed override (km/h)");
  cmd->add_option("--speed-max-kmh", opts.speed_max_kmh,
                  "Maximum user speed override (km/h)");
}

ScenarioConfig resolve_scenario(const ScenarioOpts& opts) {
  ScenarioConfig cfg;
  if (!opts.config_path.empty())
    cfg = irsim::harness::load_experiment_file(opts.config_path).scenario;
  else
    cfg = opts.paper ? ScenarioConfig::paper() : ScenarioConfig::desk();
  if (opts.tau > 0) cfg.history_len = opts.tau;
  if (opts.users > 0) cfg.set_num_users(opts.users);
  if (!std::isnan(opts.beta_db)) {
    const double beta = irsim::db_to_linear(opts.beta_db);
    cfg.rician.rician_ap_irs = beta;
    cfg.rician.rician_irs_user.assign(
        static_cast<std::size_t>(cfg.num_users), beta);
  }
  if (opts.speed_min_kmh >= 0.0)
    cfg.mobility.speed_min = irsim::kmh_to_mps(opts.speed_min_kmh);
  if (opts.speed_max_kmh >= 0.0)
    cfg.mobility.speed_max = irsim::kmh_to_mps(opts.speed_max_kmh);
  cfg.validate();
  return cfg;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << content;
}

void report_training(const std::string& label,
                     const irsim::train::TrainRecord& record,
                     const std::string& curve_path) {
  std::cerr << label << ": initial loss " << record.initial_loss
            << ", final loss " << record.final_loss;
  if (record.heldout_initial != 0.0 || record.heldout_final != 0.0)
    std::cerr << " (held-out " << record.heldout_initial << " -> "
              << record.heldout_final << ")";
  std::cerr << (record.diverged ? " [DIVERGED]" : "") << "\n";
  if (!curve_path.empty()) write_text_file(curve_path, record.to_csv());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irsim: IRS-assisted MISO downlink simulation and learned "
               "predictive beamforming"};
  app.set_version_flag("--version", std::string(irsim::kVersionString));
  app.require_subcommand(1);

  // ---- gen-data --------------------------------------------------------
  auto* gen = app.add_subcommand(
      "gen-data", "Generate a phase or beam training dataset");
  ScenarioOpts gen_scenario;
  std::string gen_kind = "phase";
  std::string gen_out = "dataset.bin";
  std::string gen_phase_ckpt;
  int gen_count = 2000;
  std::uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind, "phase | beam")
      ->check(CLI::IsMember({"phase", "beam"}));
  gen->add_option("--out", gen_out, "Output dataset file")->required();
  gen->add_option("--count", gen_count, "Number of examples");
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--phase-checkpoint", gen_phase_ckpt,
                  "Trained phase network (required for beam datasets)");
  add_scenario_options(gen, gen_scenario);

  // ---- train-phase / train-beam ---------------------------------------
  auto* tp = app.add_subcommand("train-phase",
                                "Train the predictive phase network");
  auto* tb = app.add_subcommand("train-beam",
                                "Train the instantaneous beam network");
  struct TrainOpts {
    std::string data;
    std::string out;
    std::string curve;
    irsim::train::TrainConfig cfg;
    int gnn_width = 0;  // phase network only; 0 keeps the preset width
  } tp_opts, tb_opts;
  for (auto [cmd, opts] : {std::pair{tp, &tp_opts}, std::pair{tb, &tb_opts}}) {
    cmd->add_option("--data", opts->data, "Dataset file")->required();
    cmd->add_option("--out", opts->out, "Checkpoint output path")->required();
    cmd->add_option("--epochs", opts->cfg.epochs, "Training epochs");
    cmd->add_option("--batch", opts->cfg.batch_size, "Mini-batch size");
    cmd->add_option("--lr", opts->cfg.learning_rate, "Learning rate");
    cmd->add_option("--seed", opts->cfg.seed, "Init and shuffling seed");
    cmd->add_option("--curve", opts->curve, "Write the loss curve CSV here");
  }
  tp->add_option("--gnn-width", tp_opts.gnn_width,
                 "GNN feature/hidden width (default 128, paper preset 512)");

  // ---- eval ------------------------------------------------------------
  auto* ev = app.add_subcommand("eval", "Run a Monte Carlo experiment from a "
                                        "config file");
  std::string ev_config;
  std::string ev_out;
  std::string ev_phase, ev_beam;
  std::uint64_t ev_seed = 0;
  bool ev_seed_set = false;
  int ev_threads = 0;
  ev->add_option("--config", ev_config, "Experiment config JSON")->required();
  ev->add_option("--out", ev_out, "Output directory override");
  ev->add_option("--phase-checkpoint", ev_phase, "Phase checkpoint override");
  ev->add_option("--beam-checkpoint", ev_beam, "Beam checkpoint override");
  ev->add_option("--seed", ev_seed, "Seed override")
      ->each([&](const std::string&) { ev_seed_set = true; });
  ev->add_option("--threads", ev_threads, "Worker thread override");

  // ---- sweep -----------------------------------------------------------
  auto* sw = app.add_subcommand("sweep",
                                "Run a preset figure-protocol sweep");
  std::string sw_preset;
  bool sw_paper = false;
  int sw_trials = 0;
  std::uint64_t sw_seed = 1;
  int sw_threads = 1;
  std::string sw_out = "out";
  std::string sw_phase, sw_beam;
  std::vector<std::string> sw_schemes;
  std::string sw_emit_config;
  sw->add_option("preset", sw_preset, "beta | power | users | velocity | tau")
      ->required();
  sw->add_flag("--paper", sw_paper, "Full-size preset");
  sw->add_option("--trials", sw_trials, "Trials per sweep point");
  sw->add_option("--seed", sw_seed, "Master seed");
  sw->add_option("--threads", sw_threads, "Worker threads");
  sw->add_option("--out", sw_out, "Output directory");
  sw->add_option("--phase-checkpoint", sw_phase,
                 "Phase checkpoint ({tau} expands on the tau axis)");
  sw->add_option("--beam-checkpoint", sw_beam, "Beam checkpoint");
  sw->add_option("--schemes", sw_schemes,
                 "Subset of dlpb,fp_icsi,naive_fp,random_mrt")
      ->delimiter(',');
  sw->add_option("--emit-config", sw_emit_config,
                 "Write the resolved config JSON and exit");

  // ---- scalability -----------------------------------------------------
  auto* sc = app.add_subcommand(
      "scalability", "Evaluate one trained checkpoint across user counts");
  std::string sc_phase, sc_beam, sc_out = "out";
  std::vector<int> sc_k = {2, 3, 4, 5, 6};
  int sc_trials = 50;
  std::uint64_t sc_seed = 1;
  int sc_threads = 1;
  bool sc_paper = false;
  sc->add_option("--phase-checkpoint", sc_phase, "Phase checkpoint")
      ->required();
  sc->add_option("--beam-checkpoint", sc_beam, "Beam checkpoint")->required();
  sc->add_option("--k-values", sc_k, "User counts")->delimiter(',');
  sc->add_option("--trials", sc_trials, "Trials per user count");
  sc->add_option("--seed", sc_seed, "Master seed");
  sc->add_option("--threads", sc_threads, "Worker threads");
  sc->add_option("--out", sc_out, "Output directory");
  sc->add_flag("--paper", sc_paper, "Full-size scenario");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const ScenarioConfig scenario = resolve_scenario(gen_scenario);
      if (gen_kind == "phase") {
        irsim::train::generate_dataset_phase(scenario, gen_count, gen_seed)
            .save(gen_out);
      } else {
        if (gen_phase_ckpt.empty())
          throw std::runtime_error(
              "gen-data --kind beam requires --phase-checkpoint");
        const auto net = irsim::nn::LaClGnn::load(gen_phase_ckpt);
        irsim::train::generate_dataset_beam(net, scenario, gen_count, gen_seed)
            .save(gen_out);
      }
      std::cerr << "wrote " << gen_count << " examples to " << gen_out << "\n";
    } else if (tp->parsed()) {
      const auto dataset = irsim::train::PhaseDataset::load(tp_opts.data);
      irsim::nn::LaClGnnConfig net_cfg = irsim::nn::LaClGnnConfig::desk(
          dataset.scenario.geometry.irs_rows,
          dataset.scenario.geometry.irs_cols,
          dataset.scenario.geometry.num_ap_antennas);
      if (tp_opts.gnn_width > 0) net_cfg.gnn_width = tp_opts.gnn_width;
      irsim::nn::LaClGnn net(net_cfg, tp_opts.cfg.seed);
      const auto record = irsim::train::train_lacl(net, dataset, tp_opts.cfg);
      net.save(tp_opts.out);
      report_training("train-phase", record, tp_opts.curve);
      if (record.diverged) return 2;
    } else if (tb->parsed()) {
      const auto dataset = irsim::train::BeamDataset::load(tb_opts.data);
      irsim::nn::IaFnn net(
          irsim::nn::IaFnnConfig::desk(
              dataset.scenario.geometry.num_ap_antennas),
          tb_opts.cfg.seed);
      const auto record = irsim::train::train_iafnn(net, dataset, tb_opts.cfg);
      net.save(tb_opts.out);
      report_training("train-beam", record, tb_opts.curve);
      if (record.diverged) return 2;
    } else if (ev->parsed()) {
      ExperimentConfig cfg = irsim::harness::load_experiment_file(ev_config);
      if (!ev_out.empty()) cfg.output_dir = ev_out;
      if (!ev_phase.empty()) cfg.phase_checkpoint = ev_phase;
      if (!ev_beam.empty()) cfg.beam_checkpoint = ev_beam;
      if (ev_seed_set) cfg.seed = ev_seed;
      if (ev_threads > 0) cfg.threads = ev_threads;
      const auto table = irsim::harness::run_monte_carlo(cfg);
      irsim::harness::emit_report(table, cfg, cfg.output_dir);
      std::cerr << "wrote " << table.rows.size() << " rows to "
                << cfg.output_dir << "\n";
    } else if (sw->parsed()) {
      ExperimentConfig cfg = irsim::harness::sweep_presets(sw_preset, sw_paper);
      if (sw_trials > 0) cfg.trials = sw_trials;
      cfg.seed = sw_seed;
      cfg.threads = sw_threads;
      cfg.output_dir = sw_out;
      cfg.phase_checkpoint = sw_phase;
      cfg.beam_checkpoint = sw_beam;
      if (!sw_schemes.empty()) cfg.schemes = sw_schemes;
      if (!sw_emit_config.empty()) {
        irsim::harness::save_experiment_file(cfg, sw_emit_config);
        std::cerr << "wrote config to " << sw_emit_config << "\n";
        return 0;
      }
      const auto table = irsim::harness::run_monte_carlo(cfg);
      irsim::harness::emit_report(table, cfg, cfg.output_dir);
      std::cerr << "wrote " << table.rows.size() << " rows to "
                << cfg.output_dir << "\n";
    } else if (sc->parsed()) {
      ExperimentConfig base;
      base.scenario =
          sc_paper ? ScenarioConfig::paper() : ScenarioConfig::desk();
      base.trials = sc_trials;
      base.seed = sc_seed;
      base.threads = sc_threads;
      base.output_dir = sc_out;
      const auto phase_net = irsim::nn::LaClGnn::load(sc_phase);
      const auto beam_net = irsim::nn::IaFnn::load(sc_beam);
      const auto table =
          irsim::harness::scalability_eval(base, phase_net, beam_net, sc_k);
      irsim::harness::emit_report(table, base, sc_out);
      std::cerr << "wrote " << table.rows.size() << " rows to " << sc_out
                << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
