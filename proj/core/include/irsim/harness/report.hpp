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

#include <string>

#include "irsim/harness/experiment.hpp"

namespace irsim::harness {

/// Writes results.csv (one row per trial) and summary.json (per-cell means
/// and standard errors, config echo, seed, version string) into out_dir.
/// The outputs are a pure function of (config, results): rerunning with the
/// same seed reproduces them byte for byte. Throws std::invalid_argument for
/// empty results and std::runtime_error on I/O failure.
void emit_report(const ResultTable& results, const ExperimentConfig& cfg,
                 const std::string& out_dir);

/// In-memory renderings used by emit_report (exposed for tests).
std::string render_csv(const ResultTable& results);
std::string render_summary_json(const ResultTable& results,
                                const ExperimentConfig& cfg);

}  // namespace irsim::harness
