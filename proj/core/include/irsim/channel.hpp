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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "irsim/geometry.hpp"
#include "irsim/phase.hpp"
#include "irsim/rng.hpp"

namespace irsim {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexRowVector = Eigen::RowVectorXcd;

/// Rician mixing and large-scale fading parameters. All factors are linear
/// ratios; dB values are converted at configuration-load time.
struct RicianParams {
  double rician_ap_irs = 1.0;               // beta_AI
  std::vector<double> rician_irs_user;      // beta_IU per user; may be +inf
  double pathloss_exp_ap_irs = 2.0;         // eta_AI
  double pathloss_exp_user = 2.0;           // eta_k (common to all users)
  double ref_pathloss = 1.0;                // beta_0, linear
  double ref_distance = 1.0;                // D_0, meters
};

/// Deterministic array-response products. Every entry has unit modulus.
struct LosChannels {
  ComplexMatrix g_bar;                 // N x M, AP-to-IRS
  std::vector<ComplexVector> f_bar;    // N x 1 per user, IRS-to-user
};

/// One slot's channel draw: LoS structure mixed with fresh NLoS scatter and
/// scaled by the per-link path losses.
struct ChannelRealization {
  ComplexMatrix g;                     // N x M
  std::vector<ComplexVector> f;        // N x 1 per user
  LosChannels los;
  double pathloss_ap_irs = 1.0;        // alpha_AI
  std::vector<double> pathloss_user;   // alpha_IU per user

  int num_users() const { return static_cast<int>(f.size()); }
};

/// Channel estimation modeled as additive noise at a configured NMSE.
struct EstimationModel {
  double nmse = 0.0;  // rho in [0, 1)
};

/// AP array response, entry m = exp(-j*2*pi*(m-1)*spacing/lambda *
/// sin_theta*cos_xi), m = 1..count.
ComplexVector steering_ap(double sin_theta, double cos_xi, int count,
                          double spacing, double lambda);

/// IRS axis response, entry n = exp(-j*2*pi*(n-1)*spacing/lambda *
/// sin_theta*xi_component). Pass cos(xi) for the y-axis and sin(xi) for the
/// z-axis.
ComplexVector steering_irs(double sin_theta, double xi_component, int count,
                           double spacing, double lambda);

/// LoS AP-to-IRS channel: (a_y kron a_z) * a_AP^H, size N x M with
/// N = irs_cols * irs_rows and the y index varying slowest.
ComplexMatrix los_ap_irs(const SystemGeometry& geom);

/// LoS IRS-to-user channel: a_y kron a_z, size N x 1, same element order as
/// los_ap_irs.
ComplexVector los_irs_user(const SystemGeometry& geom, const Vec3& user_loc);

/// Distance power law beta_0 * (d / d_0)^(-eta). Throws std::domain_error
/// for d <= 0.
double path_loss(double d, double eta, double beta0, double d0);

/// Assembles both LoS links for the given user positions.
LosChannels assemble_los(const SystemGeometry& geom,
                         const std::vector<Vec3>& user_locs);

/// Draws Rician channels: sqrt(alpha*beta/(beta+1))*LoS +
/// sqrt(alpha/(beta+1))*NLoS with i.i.d. CN(0,1) NLoS entries. A Rician
/// factor of +inf selects the pure-LoS limit (NLoS weight zero).
ChannelRealization sample_channels(const LosChannels& los,
                                   const RicianParams& params,
                                   double pathloss_ap_irs,
                                   const std::vector<double>& pathloss_user,
                                   Rng& rng);

/// Effective MISO channel h^H = f^H * diag(c) * G, a 1 x M row. Identical to
/// c^T * diag(conj(f)) * G.
ComplexRowVector effective_miso(const ComplexVector& f,
                                const PhaseConfig& phases,
                                const ComplexMatrix& g);

/// Cascaded channel diag(conj(f_bar)) * G_bar, the N x M matrix H such that
/// c^T * H equals effective_miso(f_bar, Phi, G_bar) for c built from Phi.
ComplexMatrix cascaded_los(const ComplexVector& f_bar,
                           const ComplexMatrix& g_bar);

/// Adds estimation noise: h + dh with dh entries i.i.d. CN(0,
/// nmse*ref_power/len(h)), so E[||dh||^2] = nmse * ref_power.
ComplexVector apply_ce_error(const ComplexVector& h,
                             const EstimationModel& model, double ref_power,
                             Rng& rng);

}  // namespace irsim
