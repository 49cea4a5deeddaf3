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

#include "irsim/baselines.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace irsim {

std::string SolverTrace::to_csv() const {
  std::string out = "iteration,wsr\n";
  char row[64];
  for (std::size_t i = 0; i < wsr_per_iteration.size(); ++i) {
    std::snprintf(row, sizeof(row), "%zu,%.17g\n", i, wsr_per_iteration[i]);
    out += row;
  }
  return out;
}

void StaleCsiConfig::validate() const {
  if (lag < 1) throw std::invalid_argument("StaleCsiConfig: lag must be >= 1");
}

BeamMatrix mrt(const ComplexMatrix& h_rows, double power) {
  const int num_users = static_cast<int>(h_rows.rows());
  if (num_users < 1) throw std::invalid_argument("mrt: no users");
  if (power <= 0.0) throw std::invalid_argument("mrt: power must be > 0");
  ComplexMatrix w(h_rows.cols(), num_users);
  const double amp = std::sqrt(power / num_users);
  for (int k = 0; k < num_users; ++k) {
    const double nrm = h_rows.row(k).norm();
    if (nrm == 0.0) throw std::domain_error("mrt: zero effective channel");
    w.col(k) = amp / nrm * h_rows.row(k).adjoint();
  }
  return BeamMatrix(std::move(w), power);
}

PhaseConfig random_phase(int num_elements, Rng& rng) {
  if (num_elements < 1)
    throw std::invalid_argument("random_phase: num_elements must be >= 1");
  Eigen::VectorXd phases(num_elements);
  for (int n = 0; n < num_elements; ++n)
    phases[n] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return PhaseConfig(std::move(phases));
}

namespace {

// Working state of the alternating WSR solver. Channels are carried as the
// cascaded matrices A_k = diag(conj(f_k)) G so the effective row for any
// phase vector c is h_k^H = c^T A_k.
struct FpState {
  std::vector<ComplexMatrix> cascaded;  // A_k, N x M
  Eigen::VectorXd noise;
  Eigen::VectorXd weights;
  double power;

  int num_users() const { return static_cast<int>(cascaded.size()); }
  int num_elements() const { return static_cast<int>(cascaded[0].rows()); }
  int num_antennas() const { return static_cast<int>(cascaded[0].cols()); }

  ComplexMatrix effective_rows(const ComplexVector& c) const {
    ComplexMatrix h(num_users(), num_antennas());
    for (int k = 0; k < num_users(); ++k)
      h.row(k) = c.transpose() * cascaded[static_cast<std::size_t>(k)];
    return h;
  }
};

Eigen::VectorXd sinr_values(const ComplexMatrix& h_rows,
                            const ComplexMatrix& w,
                            const Eigen::VectorXd& noise) {
  const int num_users = static_cast<int>(h_rows.rows());
  Eigen::VectorXd gammas(num_users);
  for (int k = 0; k < num_users; ++k) {
    double signal = 0.0;
    double interference = 0.0;
    for (int j = 0; j < num_users; ++j) {
      const double p = std::norm((h_rows.row(k) * w.col(j))(0));
      if (j == k)
        signal = p;
      else
        interference += p;
    }
    gammas[k] = signal / (interference + noise[k]);
  }
  return gammas;
}

double wsr_bits(const ComplexMatrix& h_rows, const ComplexMatrix& w,
                const Eigen::VectorXd& noise, const Eigen::VectorXd& weights) {
  const Eigen::VectorXd g = sinr_values(h_rows, w, noise);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < g.size(); ++k)
    sum += weights[k] * std::log2(1.0 + g[k]);
  return sum;
}

// Ratio updates of the surrogate: gamma_k from the current iterate and the
// quadratic-transform auxiliaries y_k.
struct Surrogate {
  Eigen::VectorXd alpha_bar;  // weights * (1 + gamma)
  ComplexVector y;
};

Surrogate tighten(const FpState& st, const ComplexMatrix& h_rows,
                  const ComplexMatrix& w) {
  const int num_users = st.num_users();
  Surrogate s;
  s.alpha_bar.resize(num_users);
  s.y.resize(num_users);
  const Eigen::VectorXd gammas = sinr_values(h_rows, w, st.noise);
  for (int k = 0; k < num_users; ++k) {
    s.alpha_bar[k] = st.weights[k] * (1.0 + gammas[k]);
    double denom = st.noise[k];
    for (int j = 0; j < num_users; ++j)
      denom += std::norm((h_rows.row(k) * w.col(j))(0));
    s.y[k] = std::sqrt(s.alpha_bar[k]) * (h_rows.row(k) * w.col(k))(0) / denom;
  }
  return s;
}

// Surrogate-optimal beams for fixed phases: w_k = (B + mu I)^{-1} b_k with
// B = sum_m |y_m|^2 h_m h_m^H and b_k = sqrt(alpha_bar_k) y_k h_k. mu = 0
// when the unconstrained solution fits the budget, otherwise bisected so the
// transmit power meets it.
ComplexMatrix update_beams(const FpState& st, const ComplexMatrix& h_rows,
                           const Surrogate& s) {
  const int num_users = st.num_users();
  const int m = st.num_antennas();
  ComplexMatrix b(m, num_users);
  ComplexMatrix gram = ComplexMatrix::Zero(m, m);
  for (int k = 0; k < num_users; ++k) {
    const ComplexVector h_col = h_rows.row(k).adjoint();  // h_k as column
    b.col(k) = std::sqrt(s.alpha_bar[k]) * s.y[k] * h_col;
    gram += std::norm(s.y[k]) * (h_col * h_col.adjoint());
  }

  const auto solve_for = [&](double mu) {
    ComplexMatrix regularized = gram;
    regularized.diagonal().array() += mu;
    if (mu == 0.0) {
      // gram may be rank deficient; b lies in its range, so the min-norm
      // solution is the surrogate maximizer.
      return ComplexMatrix(
          gram.completeOrthogonalDecomposition().solve(b));
    }
    return ComplexMatrix(regularized.ldlt().solve(b));
  };

  ComplexMatrix w = solve_for(0.0);
  if (w.squaredNorm() <= st.power) return w;

  double lo = 0.0;
  double hi = 1e-12 * (1.0 + gram.diagonal().real().maxCoeff());
  while (solve_for(hi).squaredNorm() > st.power) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("fp: power bisection diverged");
  }
  for (int it = 0; it < 96; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (solve_for(mid).squaredNorm() > st.power)
      lo = mid;
    else
      hi = mid;
  }
  w = solve_for(hi);
  const double p = w.squaredNorm();
  if (p > st.power) w *= std::sqrt(st.power / p);
  return w;
}

// One cyclic sweep of closed-form per-element phase updates maximizing the
// same surrogate. Maintains the running products s_kj = c^T A_k w_j.
void update_phases(const FpState& st, const Surrogate& s,
                   const ComplexMatrix& w, ComplexVector& c) {
  const int num_users = st.num_users();
  const int n_elem = st.num_elements();

  // q[k][j] = A_k w_j, the per-element contributions to h_k^H w_j.
  std::vector<std::vector<ComplexVector>> q(
      static_cast<std::size_t>(num_users));
  ComplexMatrix s_kj(num_users, num_users);
  for (int k = 0; k < num_users; ++k) {
    q[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(num_users));
    for (int j = 0; j < num_users; ++j) {
      q[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          st.cascaded[static_cast<std::size_t>(k)] * w.col(j);
      s_kj(k, j) = (c.transpose() *
                    q[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])(
          0);
    }
  }

  for (int n = 0; n < n_elem; ++n) {
    std::complex<double> zeta(0.0, 0.0);
    for (int k = 0; k < num_users; ++k) {
      const double y2 = std::norm(s.y[k]);
      for (int j = 0; j < num_users; ++j) {
        const std::complex<double> qn =
            q[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)][n];
        const std::complex<double> rest = s_kj(k, j) - c[n] * qn;
        zeta -= 2.0 * y2 * qn * std::conj(rest);
      }
      zeta += 2.0 * std::sqrt(s.alpha_bar[k]) * std::conj(s.y[k]) *
              q[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)][n];
    }
    const double mag = std::abs(zeta);
    if (mag == 0.0) continue;  // indifferent update: keep the current phase
    const std::complex<double> c_new = std::conj(zeta) / mag;
    const std::complex<double> delta = c_new - c[n];
    for (int k = 0; k < num_users; ++k)
      for (int j = 0; j < num_users; ++j)
        s_kj(k, j) +=
            delta *
            q[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)][n];
    c[n] = c_new;
  }
}

Eigen::VectorXd phases_from_unit(const ComplexVector& c) {
  Eigen::VectorXd phases(c.size());
  for (Eigen::Index n = 0; n < c.size(); ++n)
    phases[n] = wrap_phase(std::arg(c[n]));
  return phases;
}

}  // namespace

FpResult fp_wsr_maximize(const ChannelRealization& channels,
                         const LinkBudget& budget, double power,
                         const FpOptions& options) {
  const int num_users = channels.num_users();
  if (num_users < 1) throw std::invalid_argument("fp: no users");
  budget.validate(num_users);
  if (power <= 0.0) throw std::invalid_argument("fp: power must be > 0");
  if (options.max_iterations < 1)
    throw std::invalid_argument("fp: max_iterations must be >= 1");

  FpState st;
  st.noise = budget.noise_power;
  st.weights = budget.weights;
  st.power = power;
  st.cascaded.reserve(static_cast<std::size_t>(num_users));
  for (int k = 0; k < num_users; ++k) {
    ComplexMatrix a =
        cascaded_los(channels.f[static_cast<std::size_t>(k)], channels.g);
    if (a.norm() == 0.0)
      throw std::domain_error("fp: degenerate (all-zero) channel");
    st.cascaded.push_back(std::move(a));
  }

  // Initialization: zero phases, MRT on the resulting effective channels.
  ComplexVector c = ComplexVector::Ones(st.num_elements());
  ComplexMatrix h = st.effective_rows(c);
  ComplexMatrix w = mrt(h, power).matrix();

  SolverTrace trace;
  trace.wsr_per_iteration.push_back(wsr_bits(h, w, st.noise, st.weights));

  for (int it = 0; it < options.max_iterations; ++it) {
    // Beam block.
    h = st.effective_rows(c);
    Surrogate s = tighten(st, h, w);
    w = update_beams(st, h, s);

    // Phase block, with freshly tightened surrogate.
    s = tighten(st, h, w);
    update_phases(st, s, w, c);

    h = st.effective_rows(c);
    const double value = wsr_bits(h, w, st.noise, st.weights);
    const double increment = value - trace.wsr_per_iteration.back();
    trace.wsr_per_iteration.push_back(value);
    if (increment < options.tolerance) {
      trace.converged = true;
      trace.stop_reason = "increment_below_tolerance";
      break;
    }
  }
  if (!trace.converged) trace.stop_reason = "max_iterations";

  return FpResult{PhaseConfig(phases_from_unit(c)),
                  BeamMatrix(std::move(w), power), std::move(trace)};
}

NaiveFpResult naive_fp(const ChannelRealization& stale,
                       const ChannelRealization& current,
                       const LinkBudget& budget, double power,
                       const FpOptions& options) {
  if (stale.num_users() != current.num_users())
    throw std::invalid_argument("naive_fp: user count mismatch");
  FpResult solved = fp_wsr_maximize(stale, budget, power, options);

  ComplexMatrix h_true(current.num_users(), current.g.cols());
  for (int k = 0; k < current.num_users(); ++k)
    h_true.row(k) = effective_miso(current.f[static_cast<std::size_t>(k)],
                                   solved.phases, current.g);
  const double achieved = wsr_effective(h_true, solved.beams, budget);
  return NaiveFpResult{achieved, std::move(solved.phases),
                       std::move(solved.beams), std::move(solved.trace)};
}

}  // namespace irsim
