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

#include "irsim/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irsim {

namespace {

ComplexVector unit_phase_ramp(double arg_per_element, int count) {
  ComplexVector v(count);
  for (int n = 0; n < count; ++n) {
    const double phase = -arg_per_element * static_cast<double>(n);
    v[n] = std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return v;
}

// LoS/NLoS amplitude weights sqrt(beta/(beta+1)) and sqrt(1/(beta+1)).
// beta = +inf selects (1, 0).
std::pair<double, double> rician_weights(double beta) {
  if (beta < 0.0)
    throw std::invalid_argument("channel: Rician factor must be >= 0");
  if (std::isinf(beta)) return {1.0, 0.0};
  return {std::sqrt(beta / (beta + 1.0)), std::sqrt(1.0 / (beta + 1.0))};
}

}  // namespace

ComplexVector steering_ap(double sin_theta, double cos_xi, int count,
                          double spacing, double lambda) {
  if (count < 1)
    throw std::invalid_argument("steering_ap: count must be >= 1");
  const double arg =
      2.0 * std::numbers::pi * spacing / lambda * sin_theta * cos_xi;
  return unit_phase_ramp(arg, count);
}

ComplexVector steering_irs(double sin_theta, double xi_component, int count,
                           double spacing, double lambda) {
  if (count < 1)
    throw std::invalid_argument("steering_irs: count must be >= 1");
  const double arg =
      2.0 * std::numbers::pi * spacing / lambda * sin_theta * xi_component;
  return unit_phase_ramp(arg, count);
}

ComplexMatrix los_ap_irs(const SystemGeometry& geom) {
  geom.validate();
  const LinkAngles ang = angles_ap_irs(geom);
  const ComplexVector a_ap =
      steering_ap(ang.sin_theta, ang.cos_xi, geom.num_ap_antennas,
                  geom.spacing_ap, geom.carrier_wavelength);
  const ComplexVector a_y =
      steering_irs(ang.sin_theta, ang.cos_xi, geom.irs_cols,
                   geom.spacing_irs_y, geom.carrier_wavelength);
  const ComplexVector a_z =
      steering_irs(ang.sin_theta, ang.sin_xi, geom.irs_rows,
                   geom.spacing_irs_z, geom.carrier_wavelength);

  const int n = geom.num_irs_elements();
  ComplexVector irs_response(n);
  for (int iy = 0; iy < geom.irs_cols; ++iy)
    for (int iz = 0; iz < geom.irs_rows; ++iz)
      irs_response[iy * geom.irs_rows + iz] = a_y[iy] * a_z[iz];
  return irs_response * a_ap.adjoint();
}

ComplexVector los_irs_user(const SystemGeometry& geom, const Vec3& user_loc) {
  geom.validate();
  const LinkAngles ang = angles_irs_user(geom, user_loc);
  const ComplexVector a_y =
      steering_irs(ang.sin_theta, ang.cos_xi, geom.irs_cols,
                   geom.spacing_irs_y, geom.carrier_wavelength);
  const ComplexVector a_z =
      steering_irs(ang.sin_theta, ang.sin_xi, geom.irs_rows,
                   geom.spacing_irs_z, geom.carrier_wavelength);
  ComplexVector f(geom.num_irs_elements());
  for (int iy = 0; iy < geom.irs_cols; ++iy)
    for (int iz = 0; iz < geom.irs_rows; ++iz)
      f[iy * geom.irs_rows + iz] = a_y[iy] * a_z[iz];
  return f;
}

double path_loss(double d, double eta, double beta0, double d0) {
  if (d <= 0.0) throw std::domain_error("path_loss: distance must be > 0");
  if (beta0 <= 0.0 || d0 <= 0.0)
    throw std::invalid_argument("path_loss: reference values must be > 0");
  return beta0 * std::pow(d / d0, -eta);
}

LosChannels assemble_los(const SystemGeometry& geom,
                         const std::vector<Vec3>& user_locs) {
  LosChannels los;
  los.g_bar = los_ap_irs(geom);
  los.f_bar.reserve(user_locs.size());
  for (const Vec3& loc : user_locs) los.f_bar.push_back(los_irs_user(geom, loc));
  return los;
}

ChannelRealization sample_channels(const LosChannels& los,
                                   const RicianParams& params,
                                   double pathloss_ap_irs,
                                   const std::vector<double>& pathloss_user,
                                   Rng& rng) {
  const int num_users = static_cast<int>(los.f_bar.size());
  if (static_cast<int>(params.rician_irs_user.size()) != num_users ||
      static_cast<int>(pathloss_user.size()) != num_users)
    throw std::invalid_argument("sample_channels: per-user sizes inconsistent");

  ChannelRealization real;
  real.los = los;
  real.pathloss_ap_irs = pathloss_ap_irs;
  real.pathloss_user = pathloss_user;

  const auto [w_los_g, w_nlos_g] = rician_weights(params.rician_ap_irs);
  const double amp_g = std::sqrt(pathloss_ap_irs);
  real.g = (amp_g * w_los_g) * los.g_bar;
  if (w_nlos_g > 0.0) {
    const double s = amp_g * w_nlos_g;
    for (Eigen::Index i = 0; i < real.g.rows(); ++i)
      for (Eigen::Index j = 0; j < real.g.cols(); ++j)
        real.g(i, j) += s * rng.cnormal();
  }

  real.f.reserve(static_cast<std::size_t>(num_users));
  for (int k = 0; k < num_users; ++k) {
    const auto [w_los_f, w_nlos_f] =
        rician_weights(params.rician_irs_user[static_cast<std::size_t>(k)]);
    const double amp_f = std::sqrt(pathloss_user[static_cast<std::size_t>(k)]);
    ComplexVector f = (amp_f * w_los_f) * los.f_bar[static_cast<std::size_t>(k)];
    if (w_nlos_f > 0.0) {
      const double s = amp_f * w_nlos_f;
      for (Eigen::Index i = 0; i < f.size(); ++i) f[i] += s * rng.cnormal();
    }
    real.f.push_back(std::move(f));
  }
  return real;
}

ComplexRowVector effective_miso(const ComplexVector& f,
                                const PhaseConfig& phases,
                                const ComplexMatrix& g) {
  if (f.size() != g.rows() || phases.size() != static_cast<int>(g.rows()))
    throw std::invalid_argument("effective_miso: dimension mismatch");
  const ComplexVector c = phases.unit_vector();
  return (f.conjugate().cwiseProduct(c)).transpose() * g;
}

ComplexMatrix cascaded_los(const ComplexVector& f_bar,
                           const ComplexMatrix& g_bar) {
  if (f_bar.size() != g_bar.rows())
    throw std::invalid_argument("cascaded_los: dimension mismatch");
  return f_bar.conjugate().asDiagonal() * g_bar;
}

ComplexVector apply_ce_error(const ComplexVector& h,
                             const EstimationModel& model, double ref_power,
                             Rng& rng) {
  if (model.nmse < 0.0)
    throw std::invalid_argument("apply_ce_error: nmse must be >= 0");
  if (ref_power <= 0.0)
    throw std::invalid_argument("apply_ce_error: ref_power must be > 0");
  if (model.nmse == 0.0) return h;
  const double per_entry_std =
      std::sqrt(model.nmse * ref_power / static_cast<double>(h.size()));
  ComplexVector out = h;
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out[i] += per_entry_std * rng.cnormal();
  return out;
}

}  // namespace irsim
