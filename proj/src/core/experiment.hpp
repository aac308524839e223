// Copyright 2026 The vsauction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/runner.hpp"

namespace vsa {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kIncompleteMarker = "INCOMPLETE";

/// One (agent, network size, seed) cell of a batch.
struct RunPoint {
  PolicyKind agent = PolicyKind::kDdpg;
  int vsp_count = 5;
  int block_count = 60;
  std::uint64_t seed = 1;

  /// "vsps5_blocks60"
  std::string label() const;
};

/// Headline numbers of a finished run; one row of summary.csv.
struct RunSummary {
  RunPoint point;
  int episodes = 0;
  int frames_per_episode = 0;
  long long triggered_auctions = 0;
  double final_utilization = 0.0;  // last 100 triggered auctions
  double utilization_all = 0.0;    // every frame of the run
  double jain_final = 0.0;         // allocated rate over the last 100 episodes
  double reward_first = 0.0;       // mean over the first 100 episodes
  double reward_last = 0.0;        // mean over the last 100 episodes
  int convergence_episode = 0;
  std::vector<double> win_pct;     // per VSP, last 200 triggered auctions
};

/// Window sizes used for the summary columns.
inline constexpr std::size_t kUtilizationWindow = 100;
inline constexpr std::size_t kWinWindow = 200;
inline constexpr int kRewardWindow = 100;
inline constexpr int kConvergenceSmoothing = 10;

/// The batch a config describes: seeds x sweep points, one agent kind.
std::vector<RunPoint> plan_runs(const RunConfig& config);

/// `config` specialized to one point (network size, seed).
RunConfig resolve(const RunConfig& config, const RunPoint& point);

std::filesystem::path run_directory(const std::filesystem::path& root,
                                    const RunPoint& point);

/// Runs the full schedule for one point entirely in memory.
RunHistory simulate(const RunConfig& resolved, const RunPoint& point,
                    RunObserver* observer = nullptr,
                    std::string* checkpoint = nullptr);

RunSummary summarize_run(const RunPoint& point, const RunHistory& history,
                         int frames_per_episode);

/// Runs one point and writes its artifacts under run_directory().
RunSummary execute(const RunConfig& config, const RunPoint& point);

/// Runs every planned point; progress lines go to `log` when non-null.
std::vector<RunSummary> run_batch(const RunConfig& config, std::ostream* log);

struct FigureReport {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> missing;  // absent "<agent> <label>" cells
};

/// Median-across-seeds tables built from every finished run under `root`.
/// Tables are written even when some cells are missing; the report says
/// which.
FigureReport figure_tables(const std::filesystem::path& root);

double median(std::vector<double> values);

}  // namespace vsa
