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
#include <random>
#include <span>
#include <vector>

#include "core/auction.hpp"
#include "core/domain.hpp"

namespace vsa {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct EnvConfig {
  std::vector<VspProfile> profiles = default_profiles();
  double total_bandwidth = 300e6;  // Hz
  double block_bandwidth = 5e6;    // Hz
  Range bw_fraction{0.5, 1.0};
  int demand_max = 20;  // blocks
  Range value_range{50.0, 150.0};
  double per_block_rate = 33.22;  // bits/s per block
  int frames_per_episode = 250;
  std::uint64_t seed = 1;
  CoefficientParams coefficients;

  void validate() const;
  int vsp_count() const { return static_cast<int>(profiles.size()); }
  int state_dim() const { return 3 * vsp_count(); }
};

using Rng = std::mt19937_64;

/// Per-frame request process: participation, value, truthfulness, demand.
std::vector<Request> generate_requests(Rng& rng,
                                       std::span<const VspProfile> profiles,
                                       const EnvConfig& config);

/// BW_f = B * Uniform(bw_fraction).
double sample_bandwidth(Rng& rng, const EnvConfig& config);

/// Flat [b, v, n] per bidder, each scaled to [0,1].
std::vector<double> encode_state(std::span<const Request> requests,
                                 const EnvConfig& config);

/// sum_i (x_i * r_i - r_i^min) over every bidder, in index order.
double frame_reward(const AuctionOutcome& outcome,
                    std::span<const Request> requests,
                    std::span<const VspProfile> profiles);

enum class Allocator { kAuction, kGreedy };

struct StepResult {
  std::vector<double> next_state;
  double reward = 0.0;
  AuctionOutcome outcome;
  FrameState frame;  // the frame that was just cleared
  int clamped_actions = 0;
};

/// Repeated single-frame spectrum market.
///
/// Each step clears the current frame (auction when demand exceeds supply,
/// direct assignment otherwise), then draws the next frame's bandwidth and
/// requests from the environment's own generator.
class Environment {
 public:
  explicit Environment(EnvConfig config);

  std::vector<double> reset(std::uint64_t seed);
  StepResult step(std::span<const double> action);
  StepResult step_greedy();

  const EnvConfig& config() const { return config_; }
  const FrameState& frame() const { return frame_; }
  int frame_index() const { return frame_.frame_index(); }

 private:
  FrameState draw_frame(int index);
  StepResult finish(AuctionOutcome outcome, int clamped);

  EnvConfig config_;
  Rng rng_;
  FrameState frame_;
};

}  // namespace vsa
