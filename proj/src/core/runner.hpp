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
#include <vector>

#include "core/ddpg.hpp"
#include "core/environment.hpp"
#include "core/metrics.hpp"

namespace vsa {

enum class PolicyKind { kDdpg, kGreedy, kUnit };

const char* to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

struct EpisodeStats {
  int episode = 0;
  double mean_reward = 0.0;
  double utilization = 0.0;  // NaN when no auction triggered in the episode
  double jain = 0.0;         // NaN when nothing was allocated
  double noise_std = 0.0;
  double critic_loss_mean = 0.0;  // NaN when no update ran
  double actor_loss_mean = 0.0;
  int triggered_frames = 0;
};

class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_frame(int /*episode*/, const StepResult& /*step*/) {}
  virtual void on_episode(const EpisodeStats& /*stats*/) {}
};

struct RunHistory {
  std::vector<EpisodeStats> episodes;
  std::vector<FrameSummary> frames;
};

/// Seed handed to Environment::reset at the start of `episode`.
std::uint64_t episode_seed(std::uint64_t run_seed, int episode);

/// The training loop: per frame act with noise, step, store the transition,
/// then (once a batch is available) critic, actor and target updates.
RunHistory train(DdpgAgent& agent, Environment& env, int episodes,
                 int frames_per_episode, std::uint64_t seed,
                 RunObserver* observer = nullptr);

/// Runs a non-learning policy (greedy or unit) over the same schedule.
RunHistory run_baseline(PolicyKind kind, Environment& env, int episodes,
                        int frames_per_episode, std::uint64_t seed,
                        RunObserver* observer = nullptr);

}  // namespace vsa
