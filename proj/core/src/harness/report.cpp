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

#include "irsim/harness/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "irsim/version.hpp"

namespace irsim::harness {

namespace {

std::string fmt_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

std::string render_csv(const ResultTable& results) {
  if (results.rows.empty())
    throw std::invalid_argument("report: no results to emit");
  std::size_t max_users = 0;
  for (const TrialResult& row : results.rows)
    max_users = std::max(max_users, row.sinr.size());

  std::string out = "scheme,sweep_value,trial,wsr,protocol_wsr,solver_iterations";
  for (std::size_t k = 1; k <= max_users; ++k)
    out += ",sinr_" + std::to_string(k);
  out += "\n";

  for (const TrialResult& row : results.rows) {
    out += row.scheme;
    out += ',';
    out += fmt_double(row.sweep_value);
    out += ',';
    out += std::to_string(row.trial);
    out += ',';
    out += fmt_double(row.wsr);
    out += ',';
    out += fmt_double(row.protocol_wsr);
    out += ',';
    out += std::to_string(row.solver_iterations);
    for (std::size_t k = 0; k < max_users; ++k) {
      out += ',';
      if (k < row.sinr.size()) out += fmt_double(row.sinr[k]);
    }
    out += '\n';
  }
  return out;
}

std::string render_summary_json(const ResultTable& results,
                                const ExperimentConfig& cfg) {
  if (results.rows.empty())
    throw std::invalid_argument("report: no results to emit");
  nlohmann::json j;
  j["version"] = kVersionString;
  j["seed"] = cfg.seed;
  j["config"] = nlohmann::json::parse(experiment_to_json(cfg));
  nlohmann::json cells = nlohmann::json::array();
  for (const CellStats& c : results.summarize()) {
    cells.push_back({{"scheme", c.scheme},
                     {"sweep_value", c.sweep_value},
                     {"trials", c.trials},
                     {"mean_wsr", c.mean_wsr},
                     {"stderr_wsr", c.stderr_wsr},
                     {"mean_protocol_wsr", c.mean_protocol_wsr},
                     {"stderr_protocol_wsr", c.stderr_protocol_wsr}});
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

void emit_report(const ResultTable& results, const ExperimentConfig& cfg,
                 const std::string& out_dir) {
  const std::string csv = render_csv(results);
  const std::string summary = render_summary_json(results, cfg);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("report: cannot create directory " + out_dir);

  const auto write_file = [&](const std::string& name,
                              const std::string& content) {
    const std::string path = out_dir + "/" + name;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("report: cannot open " + path);
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("report: write failed for " + path);
  };
  write_file("results.csv", csv);
  write_file("summary.json", summary);
}

}  // namespace irsim::harness
