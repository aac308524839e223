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

#include <span>
#include <vector>

#include "core/domain.hpp"

namespace vsa {

/// Blocks used over blocks available, counting only frames where the auction
/// ran. Throws DomainError when no such frame (or no capacity) exists.
double spectrum_utilization(std::span<const AuctionOutcome> outcomes,
                            std::span<const FrameState> frames);

/// Same ratio over every frame, direct-assignment frames included.
double spectrum_utilization_all(std::span<const AuctionOutcome> outcomes,
                                std::span<const FrameState> frames);

/// Jain's index (sum t)^2 / (I * sum t^2).
double jain_fairness(std::span<const double> totals);

/// Share of triggered auctions won by `vsp_id` (1-based).
double winning_percentage(std::span<const AuctionOutcome> outcomes, int vsp_id);

double mean_episode_reward(std::span<const double> rewards);

/// First episode (1-based) whose trailing `window`-episode mean reaches
/// start + fraction * (final - start), where start is the first full window
/// and final is the mean of the last `final_window` episodes.
int convergence_episode(std::span<const double> episode_rewards, int window,
                        int final_window, double fraction);

/// Utility sum_i (x_i r_i - r_i^min) computed from the outcome alone.
double qos_utility(const AuctionOutcome& outcome,
                   std::span<const Request> requests,
                   std::span<const VspProfile> profiles);

/// Compact per-frame record kept for whole runs.
struct FrameSummary {
  int episode = 0;
  int frame = 0;
  bool triggered = false;
  int block_count = 0;
  int blocks_used = 0;
  double reward = 0.0;
  std::vector<int> winners;
  std::vector<double> allocated_rate;  // x_i * r_i
};

FrameSummary summarize(int episode, const FrameState& frame,
                       const AuctionOutcome& outcome, double reward);

double spectrum_utilization(std::span<const FrameSummary> frames);
double winning_percentage(std::span<const FrameSummary> frames, int vsp_id);
std::vector<double> allocated_rate_totals(std::span<const FrameSummary> frames);

/// The last `count` frames whose auction triggered (fewer if not available).
std::vector<FrameSummary> last_triggered(std::span<const FrameSummary> frames,
                                         std::size_t count);

}  // namespace vsa
