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

#include "irsim/geometry.hpp"

#include <stdexcept>

namespace irsim {

void SystemGeometry::validate() const {
  if (num_ap_antennas < 1)
    throw std::invalid_argument("geometry: num_ap_antennas must be >= 1");
  if (irs_rows < 1 || irs_cols < 1)
    throw std::invalid_argument("geometry: IRS grid must be at least 1x1");
  if (carrier_wavelength <= 0.0)
    throw std::invalid_argument("geometry: carrier_wavelength must be > 0");
  if (spacing_ap <= 0.0 || spacing_irs_y <= 0.0 || spacing_irs_z <= 0.0)
    throw std::invalid_argument("geometry: element spacings must be > 0");
}

void MobilityParams::validate() const {
  if (speed_min > speed_max)
    throw std::invalid_argument("mobility: speed_min must be <= speed_max");
  if (heading_min > heading_max)
    throw std::invalid_argument("mobility: heading_min must be <= heading_max");
  if (slot_duration <= 0.0)
    throw std::invalid_argument("mobility: slot_duration must be > 0");
  if (noise_std < 0.0)
    throw std::invalid_argument("mobility: noise_std must be >= 0");
}

double distance_ap_irs(const SystemGeometry& geom) {
  const double d = (geom.ap_location - geom.irs_location).norm();
  if (d == 0.0)
    throw std::domain_error("geometry: AP and IRS locations coincide");
  return d;
}

double distance_irs_user(const SystemGeometry& geom, const Vec3& user_loc) {
  const double dx = geom.irs_location.x - user_loc.x;
  const double dy = geom.irs_location.y - user_loc.y;
  const double h = geom.irs_location.z;
  return std::sqrt(dx * dx + dy * dy + h * h);
}

Vec3 advance_mobility(const Vec3& loc, const MobilityParams& params,
                      Rng& rng) {
  const double a = rng.uniform(params.speed_min, params.speed_max);
  const double b = rng.uniform(params.heading_min, params.heading_max);
  const double dt = params.slot_duration;
  Vec3 next{loc.x + a * std::cos(b) * dt, loc.y + a * std::sin(b) * dt, loc.z};
  if (params.noise_std > 0.0) {
    next.x += rng.normal(0.0, params.noise_std);
    next.y += rng.normal(0.0, params.noise_std);
    next.z += rng.normal(0.0, params.noise_std);
  }
  return next;
}

LinkAngles angles_ap_irs(const SystemGeometry& geom) {
  const double d = distance_ap_irs(geom);
  return {std::abs(geom.irs_location.z - geom.ap_location.z) / d,
          std::abs(geom.irs_location.y) / d, std::abs(geom.ap_location.x) / d};
}

LinkAngles angles_irs_user(const SystemGeometry& geom, const Vec3& user_loc) {
  const double d = distance_irs_user(geom, user_loc);
  return {std::abs(geom.irs_location.z) / d,
          std::abs(user_loc.y - geom.irs_location.y) / d,
          std::abs(user_loc.x) / d};
}

namespace {

Vec3 noise_offset(double sigma, Rng& rng) {
  if (sigma <= 0.0) return {0.0, 0.0, 0.0};
  return {rng.normal(0.0, sigma), rng.normal(0.0, sigma),
          rng.normal(0.0, sigma)};
}

Vec3 drift(const MobilityParams& params, Rng& rng) {
  const double a = rng.uniform(params.speed_min, params.speed_max);
  const double b = rng.uniform(params.heading_min, params.heading_max);
  const double dt = params.slot_duration;
  return {a * std::cos(b) * dt, a * std::sin(b) * dt, 0.0};
}

}  // namespace

UserTrajectory simulate_trajectory(int user_index, const Vec3& start,
                                   const MobilityParams& params, int num_slots,
                                   Rng& rng) {
  if (num_slots < 1)
    throw std::invalid_argument("trajectory: num_slots must be >= 1");
  params.validate();
  UserTrajectory traj;
  traj.user_index = user_index;
  traj.locations.reserve(static_cast<std::size_t>(num_slots));
  Vec3 mean = start;  // stays in the ground plane
  traj.locations.push_back(mean + noise_offset(params.noise_std, rng));
  for (int s = 1; s < num_slots; ++s) {
    mean = mean + drift(params, rng);
    traj.locations.push_back(mean + noise_offset(params.noise_std, rng));
  }
  return traj;
}

UserTrajectory simulate_trajectory_anchored(int user_index, const Vec3& anchor,
                                            const MobilityParams& params,
                                            int num_slots, Rng& rng) {
  if (num_slots < 1)
    throw std::invalid_argument("trajectory: num_slots must be >= 1");
  params.validate();
  std::vector<Vec3> means(static_cast<std::size_t>(num_slots));
  means.back() = anchor;
  for (int s = num_slots - 2; s >= 0; --s)
    means[static_cast<std::size_t>(s)] =
        means[static_cast<std::size_t>(s + 1)] - drift(params, rng);
  UserTrajectory traj;
  traj.user_index = user_index;
  traj.locations.reserve(static_cast<std::size_t>(num_slots));
  for (const Vec3& m : means)
    traj.locations.push_back(m + noise_offset(params.noise_std, rng));
  return traj;
}

}  // namespace irsim
