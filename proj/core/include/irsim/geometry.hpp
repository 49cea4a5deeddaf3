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

#include <cmath>
#include <vector>

#include "irsim/rng.hpp"

namespace irsim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Static deployment: AP uniform linear array along the x-axis, IRS uniform
/// planar array in the y-z plane. Element counts and spacings fix the array
/// responses; the carrier wavelength scales all phase terms.
struct SystemGeometry {
  Vec3 ap_location;
  Vec3 irs_location;
  int num_ap_antennas = 1;   // M
  int irs_rows = 1;          // N_z
  int irs_cols = 1;          // N_y
  double carrier_wavelength = 1.0;
  double spacing_ap = 0.5;
  double spacing_irs_y = 0.5;
  double spacing_irs_z = 0.5;

  int num_irs_elements() const { return irs_rows * irs_cols; }

  /// Throws std::invalid_argument on non-positive counts, wavelength, or
  /// spacings.
  void validate() const;
};

/// Per-slot kinematics: speed magnitude ~ U(speed_min, speed_max), heading
/// from the +x axis ~ U(heading_min, heading_max), plus an isotropic Gaussian
/// position offset with standard deviation noise_std on every axis.
struct MobilityParams {
  double speed_min = 0.0;      // m/s
  double speed_max = 0.0;      // m/s
  double heading_min = 0.0;    // rad
  double heading_max = 0.0;    // rad
  double slot_duration = 1.0;  // s
  double noise_std = 0.0;      // m

  void validate() const;
};

/// Realized (noise-included) user positions, one per slot. The underlying
/// mean trajectory stays in the ground plane; realized z may be nonzero.
struct UserTrajectory {
  int user_index = 0;
  std::vector<Vec3> locations;
};

/// Euclidean AP-to-IRS distance. Throws std::domain_error when the two
/// locations coincide.
double distance_ap_irs(const SystemGeometry& geom);

/// IRS-to-user distance sqrt((x_I-x_u)^2 + (y_I-y_u)^2 + h_I^2). Only the
/// user's ground-plane coordinates enter; the IRS height term is fixed by the
/// deployment, so the result is strictly positive whenever h_I != 0.
double distance_irs_user(const SystemGeometry& geom, const Vec3& user_loc);

/// One mobility step: loc + v*dt + u with v = [a cos b, a sin b, 0],
/// a ~ U(speed_min, speed_max), b ~ U(heading_min, heading_max), and u
/// i.i.d. N(0, noise_std^2) per axis.
Vec3 advance_mobility(const Vec3& loc, const MobilityParams& params, Rng& rng);

/// Projection ratios that parameterize the array responses. They are not a
/// sine/cosine pair of one angle (cos_xi^2 + sin_xi^2 != 1 in general) and
/// are used verbatim, without renormalization.
struct LinkAngles {
  double sin_theta = 0.0;
  double cos_xi = 0.0;
  double sin_xi = 0.0;
};

/// AP-to-IRS link: sin(theta) = |h_I - h_A| / d, cos(xi) = |y_I| / d,
/// sin(xi) = |x_A| / d.
LinkAngles angles_ap_irs(const SystemGeometry& geom);

/// IRS-to-user link: sin(theta) = |h_I| / d, cos(xi) = |y_u - y_I| / d,
/// sin(xi) = |x_u| / d.
LinkAngles angles_irs_user(const SystemGeometry& geom, const Vec3& user_loc);

/// Simulates `num_slots` positions starting from `start` (ground plane).
/// The mean position advances by v*dt each slot; the emitted positions are
/// mean + fresh per-slot noise, so measurement errors do not accumulate into
/// the kinematic state.
UserTrajectory simulate_trajectory(int user_index, const Vec3& start,
                                   const MobilityParams& params, int num_slots,
                                   Rng& rng);

/// Same dynamics as simulate_trajectory but anchored at the final slot:
/// positions are generated backwards from `anchor` so that the last entry has
/// a distribution independent of the speed range. Used by evaluation sweeps.
UserTrajectory simulate_trajectory_anchored(int user_index, const Vec3& anchor,
                                            const MobilityParams& params,
                                            int num_slots, Rng& rng);

}  // namespace irsim
