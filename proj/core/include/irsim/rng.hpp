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
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace irsim {

/// Deterministic random stream.
///
/// All stochastic code in the library draws from an explicitly passed Rng so
/// that every trial, dataset example, and parameter initialization owns an
/// independent stream and results are reproducible regardless of scheduling.
/// Uniform and Gaussian variates are generated from the raw 64-bit engine
/// output with fixed formulas (no library distribution objects), so a given
/// seed produces the same sequence on every standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Derives an independent stream from a master seed and stream indices
  /// (e.g. sweep index and trial index) via splitmix64 mixing.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t x = seed;
    x = mix(x + 0x9e3779b97f4a7c15ULL + a);
    x = mix(x + 0x9e3779b97f4a7c15ULL + b);
    return Rng(x);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (cosine branch; no cached state).
  double normal() {
    const double u1 = positive_uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Circularly symmetric complex Gaussian CN(0, 1): both quadratures from
  /// one Box-Muller pair, each with variance 1/2.
  std::complex<double> cnormal() {
    const double u1 = positive_uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));  // includes the 1/sqrt(2)
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double positive_uniform() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  std::mt19937_64 engine_;
};

}  // namespace irsim
