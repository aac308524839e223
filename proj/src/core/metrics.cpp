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

#include "core/metrics.hpp"


namespace vsa {
namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ContractError(what);
}

double ratio_or_throw(long long used, long long available, const char* what) {
  if (available <= 0) throw DomainError(what);
  return static_cast<double>(used) / static_cast<double>(available);
}

}  // namespace

double spectrum_utilization(std::span<const AuctionOutcome> outcomes,
                            std::span<const FrameState> frames) {
  check_lengths(outcomes.size(), frames.size(),
                "spectrum_utilization: outcome/frame count mismatch");
  long long used = 0;
  long long available = 0;
  for (std::size_t f = 0; f < outcomes.size(); ++f) {
    if (!outcomes[f].triggered) continue;
    used += outcomes[f].total_blocks_used;
    available += frames[f].block_count();
  }
  return ratio_or_throw(used, available,
                        "spectrum_utilization: no triggered auction capacity");
}

double spectrum_utilization_all(std::span<const AuctionOutcome> outcomes,
                                std::span<const FrameState> frames) {
  check_lengths(outcomes.size(), frames.size(),
                "spectrum_utilization_all: outcome/frame count mismatch");
  long long used = 0;
  long long available = 0;
  for (std::size_t f = 0; f < outcomes.size(); ++f) {
    used += outcomes[f].total_blocks_used;
    available += frames[f].block_count();
  }
  return ratio_or_throw(used, available,
                        "spectrum_utilization_all: no capacity");
}

double jain_fairness(std::span<const double> totals) {
  if (totals.empty()) throw DomainError("jain_fairness: empty input");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double t : totals) {
    if (!(t >= 0)) throw ContractError("jain_fairness: negative entry");
    sum += t;
    sum_sq += t * t;
  }
  if (sum_sq == 0.0) throw DomainError("jain_fairness: all entries are zero");
  return sum * sum / (static_cast<double>(totals.size()) * sum_sq);
}

double winning_percentage(std::span<const AuctionOutcome> outcomes,
                          int vsp_id) {
  long long auctions = 0;
  long long wins = 0;
  for (const auto& o : outcomes) {
    if (!o.triggered) continue;
    if (vsp_id < 1 || static_cast<std::size_t>(vsp_id) > o.size()) {
      throw ContractError("winning_percentage: vsp_id out of range");
    }
    ++auctions;
    wins += o.winners[vsp_id - 1];
  }
  return ratio_or_throw(wins, auctions, "winning_percentage: no auctions");
}

double mean_episode_reward(std::span<const double> rewards) {
  if (rewards.empty()) throw DomainError("mean_episode_reward: empty episode");
  // Deviations from the first reward are averaged, so a constant episode
  // reports its constant exactly.
  const double shift = rewards.front();
  double deviation = 0.0;
  for (double r : rewards) deviation += r - shift;
  return shift + deviation / static_cast<double>(rewards.size());
}

int convergence_episode(std::span<const double> episode_rewards, int window,
                        int final_window, double fraction) {
  const auto n = static_cast<int>(episode_rewards.size());
  if (window < 1 || final_window < 1 || n < window || n < final_window) {
    throw DomainError("convergence_episode: too few episodes");
  }
  auto mean_of = [&](int begin, int count) {
    return mean_episode_reward(episode_rewards.subspan(begin, count));
  };
  const double start = mean_of(0, window);
  const double target =
      start + fraction * (mean_of(n - final_window, final_window) - start);
  for (int e = window; e <= n; ++e) {
    if (mean_of(e - window, window) >= target) return e;
  }
  return n;
}

double qos_utility(const AuctionOutcome& outcome,
                   std::span<const Request> requests,
                   std::span<const VspProfile> profiles) {
  check_lengths(outcome.winners.size(), requests.size(),
                "qos_utility: outcome/request count mismatch");
  check_lengths(profiles.size(), requests.size(),
                "qos_utility: profile/request count mismatch");
  std::vector<double> obtained(requests.size());
  std::vector<double> guaranteed(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    obtained[i] = outcome.winners[i] == 1 ? requests[i].rate() : 0.0;
    guaranteed[i] = profiles[i].min_rate();
  }
  double utility = 0.0;
  for (std::size_t i = 0; i < obtained.size(); ++i) {
    utility += obtained[i] - guaranteed[i];
  }
  return utility;
}

FrameSummary summarize(int episode, const FrameState& frame,
                       const AuctionOutcome& outcome, double reward) {
  FrameSummary s;
  s.episode = episode;
  s.frame = frame.frame_index();
  s.triggered = outcome.triggered;
  s.block_count = frame.block_count();
  s.blocks_used = outcome.total_blocks_used;
  s.reward = reward;
  s.winners = outcome.winners;
  s.allocated_rate.resize(outcome.size());
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    s.allocated_rate[i] =
        outcome.winners[i] == 1 ? frame.requests()[i].rate() : 0.0;
  }
  return s;
}

double spectrum_utilization(std::span<const FrameSummary> frames) {
  long long used = 0;
  long long available = 0;
  for (const auto& f : frames) {
    if (!f.triggered) continue;
    used += f.blocks_used;
    available += f.block_count;
  }
  return ratio_or_throw(used, available,
                        "spectrum_utilization: no triggered auction capacity");
}

double winning_percentage(std::span<const FrameSummary> frames, int vsp_id) {
  long long auctions = 0;
  long long wins = 0;
  for (const auto& f : frames) {
    if (!f.triggered) continue;
    if (vsp_id < 1 || static_cast<std::size_t>(vsp_id) > f.winners.size()) {
      throw ContractError("winning_percentage: vsp_id out of range");
    }
    ++auctions;
    wins += f.winners[vsp_id - 1];
  }
  return ratio_or_throw(wins, auctions, "winning_percentage: no auctions");
}

std::vector<double> allocated_rate_totals(
    std::span<const FrameSummary> frames) {
  std::vector<double> totals;
  for (const auto& f : frames) {
    if (totals.empty()) totals.assign(f.allocated_rate.size(), 0.0);
    check_lengths(totals.size(), f.allocated_rate.size(),
                  "allocated_rate_totals: bidder count changed");
    for (std::size_t i = 0; i < totals.size(); ++i) {
      totals[i] += f.allocated_rate[i];
    }
  }
  return totals;
}

std::vector<FrameSummary> last_triggered(std::span<const FrameSummary> frames,
                                         std::size_t count) {
  std::vector<FrameSummary> out;
  for (auto it = frames.rbegin(); it != frames.rend() && out.size() < count;
       ++it) {
    if (it->triggered) out.push_back(*it);
  }
  return {out.rbegin(), out.rend()};
}

}  // namespace vsa
