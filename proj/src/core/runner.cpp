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

#include "core/runner.hpp"

#include <cmath>
#include <limits>

#include "core/baselines.hpp"
#include "core/serialization.hpp"

namespace vsa {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class EpisodeAccumulator {
 public:
  EpisodeAccumulator(int episode, std::size_t vsp_count)
      : episode_(episode), rate_totals_(vsp_count, 0.0) {}

  void add(const FrameSummary& f) {
    if (frames_ == 0) reward_shift_ = f.reward;
    reward_deviation_ += f.reward - reward_shift_;
    ++frames_;
    if (f.triggered) {
      ++triggered_;
      used_ += f.blocks_used;
      available_ += f.block_count;
    }
    for (std::size_t i = 0; i < rate_totals_.size(); ++i) {
      rate_totals_[i] += f.allocated_rate[i];
    }
  }

  void add_losses(const UpdateStats& s) {
    critic_sum_ += s.critic_loss;
    actor_sum_ += s.actor_loss;
    ++updates_;
  }

  EpisodeStats finish(double noise_std) const {
    EpisodeStats s;
    s.episode = episode_;
    s.mean_reward = reward_shift_ + reward_deviation_ / frames_;
    s.utilization = available_ > 0 ? static_cast<double>(used_) / available_
                                   : kNaN;
    double total = 0.0;
    for (double t : rate_totals_) total += t;
    s.jain = total > 0 ? jain_fairness(rate_totals_) : kNaN;
    s.noise_std = noise_std;
    s.critic_loss_mean = updates_ > 0 ? critic_sum_ / updates_ : kNaN;
    s.actor_loss_mean = updates_ > 0 ? actor_sum_ / updates_ : kNaN;
    s.triggered_frames = triggered_;
    return s;
  }

 private:
  int episode_;
  std::vector<double> rate_totals_;
  // Same arithmetic as mean_episode_reward.
  double reward_shift_ = 0.0;
  double reward_deviation_ = 0.0;
  int frames_ = 0;
  int triggered_ = 0;
  long long used_ = 0;
  long long available_ = 0;
  double critic_sum_ = 0.0;
  double actor_sum_ = 0.0;
  int updates_ = 0;
};

void check_schedule(int episodes, int frames_per_episode) {
  if (episodes < 1 || frames_per_episode < 1) {
    throw ContractError("run: episodes and frames must be >= 1");
  }
}

}  // namespace

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kDdpg:
      return "ddpg";
    case PolicyKind::kGreedy:
      return "greedy";
    case PolicyKind::kUnit:
      return "unit";
  }
  return "ddpg";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "ddpg") return PolicyKind::kDdpg;
  if (name == "greedy") return PolicyKind::kGreedy;
  if (name == "unit") return PolicyKind::kUnit;
  throw ContractError("unknown agent kind '" + name + "'");
}

std::uint64_t episode_seed(std::uint64_t run_seed, int episode) {
  return derive_seed(run_seed, static_cast<std::uint64_t>(episode));
}

RunHistory train(DdpgAgent& agent, Environment& env, int episodes,
                 int frames_per_episode, std::uint64_t seed,
                 RunObserver* observer) {
  check_schedule(episodes, frames_per_episode);
  if (agent.state_dim() != env.config().state_dim() ||
      agent.action_dim() != env.config().vsp_count()) {
    throw ContractError("train: agent and environment dimensions differ");
  }
  const auto vsp_count = static_cast<std::size_t>(env.config().vsp_count());
  RunHistory history;
  history.frames.reserve(static_cast<std::size_t>(episodes) *
                         frames_per_episode);
  for (int ep = 0; ep < episodes; ++ep) {
    EpisodeAccumulator acc(ep + 1, vsp_count);
    std::vector<double> state = env.reset(episode_seed(seed, ep));
    for (int f = 0; f < frames_per_episode; ++f) {
      std::vector<double> action = agent.act(state, true);
      StepResult step = env.step(action);
      history.frames.push_back(
          summarize(ep + 1, step.frame, step.outcome, step.reward));
      acc.add(history.frames.back());
      agent.remember(Transition{std::move(state), std::move(action),
                                step.reward, step.next_state});
      if (!agent.config().decay_per_episode) agent.decay_noise();
      if (auto stats = agent.update()) acc.add_losses(*stats);
      if (observer) observer->on_frame(ep + 1, step);
      state = std::move(step.next_state);
    }
    history.episodes.push_back(acc.finish(agent.noise_std()));
    if (agent.config().decay_per_episode) agent.decay_noise();
    if (observer) observer->on_episode(history.episodes.back());
  }
  return history;
}

RunHistory run_baseline(PolicyKind kind, Environment& env, int episodes,
                        int frames_per_episode, std::uint64_t seed,
                        RunObserver* observer) {
  check_schedule(episodes, frames_per_episode);
  if (kind == PolicyKind::kDdpg) {
    throw ContractError("run_baseline: ddpg is not a baseline");
  }
  const int vsp_count = env.config().vsp_count();
  RunHistory history;
  history.frames.reserve(static_cast<std::size_t>(episodes) *
                         frames_per_episode);
  for (int ep = 0; ep < episodes; ++ep) {
    EpisodeAccumulator acc(ep + 1, static_cast<std::size_t>(vsp_count));
    std::vector<double> state = env.reset(episode_seed(seed, ep));
    for (int f = 0; f < frames_per_episode; ++f) {
      StepResult step = kind == PolicyKind::kGreedy
                            ? env.step_greedy()
                            : env.step(unit_policy(state, vsp_count));
      history.frames.push_back(
          summarize(ep + 1, step.frame, step.outcome, step.reward));
      acc.add(history.frames.back());
      if (observer) observer->on_frame(ep + 1, step);
      state = std::move(step.next_state);
    }
    history.episodes.push_back(acc.finish(0.0));
    if (observer) observer->on_episode(history.episodes.back());
  }
  return history;
}

}  // namespace vsa
