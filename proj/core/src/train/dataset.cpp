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

#include "irsim/train/dataset.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "irsim/harness/config.hpp"

namespace irsim::train {

namespace {

constexpr char kMagic[8] = {'I', 'R', 'S', 'I', 'M', 'D', 'S', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kKindPhase = 1;
constexpr std::uint32_t kKindBeam = 2;

template <typename T>
void write_pod(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("dataset: truncated file");
  return v;
}

void write_doubles(std::ostream& os, const double* p, std::int64_t n) {
  os.write(reinterpret_cast<const char*>(p),
           static_cast<std::streamsize>(n * static_cast<std::int64_t>(sizeof(double))));
}

void read_doubles(std::istream& is, double* p, std::int64_t n) {
  is.read(reinterpret_cast<char*>(p),
          static_cast<std::streamsize>(n * static_cast<std::int64_t>(sizeof(double))));
  if (!is) throw std::runtime_error("dataset: truncated payload");
}

void write_complex(std::ostream& os, const ComplexMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      write_pod<double>(os, m(r, c).real());
      write_pod<double>(os, m(r, c).imag());
    }
}

ComplexMatrix read_complex(std::istream& is, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double re = read_pod<double>(is);
      const double im = read_pod<double>(is);
      m(r, c) = {re, im};
    }
  return m;
}

void write_header(std::ostream& os, const ScenarioConfig& scenario,
                  std::uint32_t kind, std::uint32_t count) {
  os.write(kMagic, sizeof(kMagic));
  write_pod<std::uint32_t>(os, kVersion);
  write_pod<std::uint32_t>(os, kind);
  write_pod<std::uint32_t>(os, count);
  const std::string json = harness::scenario_to_json(scenario);
  write_pod<std::uint64_t>(os, json.size());
  os.write(json.data(), static_cast<std::streamsize>(json.size()));
}

std::pair<ScenarioConfig, std::uint32_t> read_header(std::istream& is,
                                                     std::uint32_t want_kind) {
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("dataset: bad magic");
  if (read_pod<std::uint32_t>(is) != kVersion)
    throw std::runtime_error("dataset: unsupported version");
  if (read_pod<std::uint32_t>(is) != want_kind)
    throw std::runtime_error("dataset: wrong dataset kind");
  const auto count = read_pod<std::uint32_t>(is);
  const auto json_len = read_pod<std::uint64_t>(is);
  std::string json(json_len, '\0');
  is.read(json.data(), static_cast<std::streamsize>(json_len));
  if (!is) throw std::runtime_error("dataset: truncated header");
  return {harness::scenario_from_json(json), count};
}

}  // namespace

void PhaseDataset::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("dataset: cannot open " + path);
  write_header(os, scenario, kKindPhase,
               static_cast<std::uint32_t>(examples.size()));
  for (const nn::PhaseExample& ex : examples) {
    for (const nn::FeatureTensor& ft : ex.omega)
      write_doubles(os, ft.data.data(), ft.data.size());
    write_complex(os, ex.g_los);
    for (const ComplexVector& f : ex.f_los) write_complex(os, f);
  }
  if (!os) throw std::runtime_error("dataset: write failed for " + path);
}

PhaseDataset PhaseDataset::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("dataset: cannot open " + path);
  auto [scenario, count] = read_header(is, kKindPhase);
  const int n = scenario.geometry.num_irs_elements();
  const int m = scenario.geometry.num_ap_antennas;
  const int k = scenario.num_users;
  const int tau = scenario.history_len;

  PhaseDataset ds;
  ds.scenario = scenario;
  ds.examples.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    nn::PhaseExample ex;
    ex.omega.reserve(static_cast<std::size_t>(k));
    for (int u = 0; u < k; ++u) {
      ad::Tensor t({tau, n, m, 2});
      read_doubles(is, t.data(), t.size());
      ex.omega.push_back(nn::FeatureTensor{std::move(t)});
    }
    ex.g_los = read_complex(is, n, m);
    ex.f_los.reserve(static_cast<std::size_t>(k));
    for (int u = 0; u < k; ++u) ex.f_los.push_back(read_complex(is, n, 1));
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

void BeamDataset::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("dataset: cannot open " + path);
  write_header(os, scenario, kKindBeam,
               static_cast<std::uint32_t>(examples.size()));
  for (const nn::BeamExample& ex : examples) {
    write_complex(os, ex.h_hat);
    write_complex(os, ex.h_true);
  }
  if (!os) throw std::runtime_error("dataset: write failed for " + path);
}

BeamDataset BeamDataset::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("dataset: cannot open " + path);
  auto [scenario, count] = read_header(is, kKindBeam);
  const int m = scenario.geometry.num_ap_antennas;
  const int k = scenario.num_users;

  BeamDataset ds;
  ds.scenario = scenario;
  ds.examples.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    nn::BeamExample ex;
    ex.h_hat = read_complex(is, k, m);
    ex.h_true = read_complex(is, k, m);
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

namespace {

struct SimulatedSlot {
  std::vector<nn::FeatureTensor> omega;  // per user, slots t-tau..t-1
  std::vector<Vec3> target_locs;         // positions at slot t
};

// Simulates all user trajectories of one example and assembles the
// unit-modulus cascaded LoS feature histories.
SimulatedSlot simulate_example(const ScenarioConfig& cfg,
                               const ComplexMatrix& g_bar, Rng& rng) {
  const int tau = cfg.history_len;
  SimulatedSlot out;
  out.omega.reserve(static_cast<std::size_t>(cfg.num_users));
  out.target_locs.reserve(static_cast<std::size_t>(cfg.num_users));
  for (int k = 0; k < cfg.num_users; ++k) {
    const Vec3 start = cfg.area.sample(rng);
    const UserTrajectory traj =
        simulate_trajectory(k, start, cfg.mobility, tau + 1, rng);
    std::vector<ComplexMatrix> hist;
    hist.reserve(static_cast<std::size_t>(tau));
    for (int s = 0; s < tau; ++s)
      hist.push_back(cascaded_los(
          los_irs_user(cfg.geometry, traj.locations[static_cast<std::size_t>(s)]),
          g_bar));
    out.omega.push_back(nn::FeatureTensor::from_history(hist));
    out.target_locs.push_back(traj.locations.back());
  }
  return out;
}

}  // namespace

PhaseDataset generate_dataset_phase(const ScenarioConfig& cfg, int count,
                                    std::uint64_t seed) {
  cfg.validate();
  if (count < 1) throw std::invalid_argument("dataset: count must be >= 1");
  const ComplexMatrix g_bar = los_ap_irs(cfg.geometry);
  const ComplexMatrix g_los =
      std::sqrt(scenario_pathloss_ap_irs(cfg)) * g_bar;

  PhaseDataset ds;
  ds.scenario = cfg;
  ds.examples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    SimulatedSlot sim = simulate_example(cfg, g_bar, rng);
    nn::PhaseExample ex;
    ex.omega = std::move(sim.omega);
    ex.g_los = g_los;
    const std::vector<double> alphas =
        scenario_pathloss_users(cfg, sim.target_locs);
    ex.f_los.reserve(static_cast<std::size_t>(cfg.num_users));
    for (int k = 0; k < cfg.num_users; ++k)
      ex.f_los.push_back(
          std::sqrt(alphas[static_cast<std::size_t>(k)]) *
          los_irs_user(cfg.geometry, sim.target_locs[static_cast<std::size_t>(k)]));
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

BeamDataset generate_dataset_beam(const nn::LaClGnn& phase_net,
                                  const ScenarioConfig& cfg, int count,
                                  std::uint64_t seed) {
  cfg.validate();
  if (count < 1) throw std::invalid_argument("dataset: count must be >= 1");
  const ComplexMatrix g_bar = los_ap_irs(cfg.geometry);
  const double alpha_g = scenario_pathloss_ap_irs(cfg);

  // First pass: simulate, predict phases, and collect true effective rows.
  std::vector<ComplexMatrix> h_true(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    SimulatedSlot sim = simulate_example(cfg, g_bar, rng);
    const PhaseConfig phases =
        phase_net.forward(sim.omega, cfg.power).phases;

    const LosChannels los = assemble_los(cfg.geometry, sim.target_locs);
    const std::vector<double> alphas =
        scenario_pathloss_users(cfg, sim.target_locs);
    const ChannelRealization real =
        sample_channels(los, cfg.rician, alpha_g, alphas, rng);

    ComplexMatrix h(cfg.num_users, cfg.geometry.num_ap_antennas);
    for (int k = 0; k < cfg.num_users; ++k)
      h.row(k) =
          effective_miso(real.f[static_cast<std::size_t>(k)], phases, real.g);
    h_true[static_cast<std::size_t>(i)] = std::move(h);
  }

  // Dataset-mean reference powers per user, before noise injection.
  std::vector<double> ref_power(static_cast<std::size_t>(cfg.num_users), 0.0);
  for (const ComplexMatrix& h : h_true)
    for (int k = 0; k < cfg.num_users; ++k)
      ref_power[static_cast<std::size_t>(k)] += h.row(k).squaredNorm();
  for (double& r : ref_power) r /= static_cast<double>(count);

  BeamDataset ds;
  ds.scenario = cfg;
  ds.examples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i), 1);
    nn::BeamExample ex;
    ex.h_true = h_true[static_cast<std::size_t>(i)];
    ex.h_hat.resize(cfg.num_users, cfg.geometry.num_ap_antennas);
    for (int k = 0; k < cfg.num_users; ++k) {
      if (cfg.ce.nmse == 0.0) {
        ex.h_hat.row(k) = ex.h_true.row(k);
        continue;
      }
      const ComplexVector h_col = ex.h_true.row(k).adjoint();
      const ComplexVector h_hat_col = apply_ce_error(
          h_col, cfg.ce, ref_power[static_cast<std::size_t>(k)], rng);
      ex.h_hat.row(k) = h_hat_col.adjoint();
    }
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

}  // namespace irsim::train
