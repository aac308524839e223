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

#include "core/domain.hpp"

#include <cmath>
#include <numeric>

namespace vsa {
namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

VspProfile::VspProfile(int id, int qci_priority, double min_rate,
                       double max_rate, double truthfulness_mean,
                       double truthfulness_spread, double participation_prob)
    : id_(id),
      qci_priority_(qci_priority),
      min_rate_(min_rate),
      max_rate_(max_rate),
      truthfulness_mean_(truthfulness_mean),
      truthfulness_spread_(truthfulness_spread),
      participation_prob_(participation_prob) {
  require(id >= 1, "VspProfile: id must be >= 1");
  require(qci_priority >= 1, "VspProfile: qci_priority must be >= 1");
  require(finite(min_rate) && min_rate > 0, "VspProfile: min_rate must be > 0");
  require(finite(max_rate) && max_rate >= min_rate,
          "VspProfile: max_rate must be >= min_rate");
  require(truthfulness_mean > 0 && truthfulness_mean <= 1,
          "VspProfile: truthfulness_mean must lie in (0,1]");
  require(finite(truthfulness_spread) && truthfulness_spread >= 0,
          "VspProfile: truthfulness_spread must be >= 0");
  require(participation_prob >= 0 && participation_prob <= 1,
          "VspProfile: participation_prob must lie in [0,1]");
}

Request Request::absent(int vsp_id) {
  require(vsp_id >= 1, "Request: vsp_id must be >= 1");
  return Request(vsp_id, 0.0, 0.0, 0, 0.0, false);
}

Request Request::make(int vsp_id, double bid, double value, int demand,
                      double rate) {
  require(vsp_id >= 1, "Request: vsp_id must be >= 1");
  require(finite(value) && value > 0, "Request: value must be > 0");
  require(finite(bid) && bid >= 0 && bid <= value,
          "Request: bid must lie in [0, value]");
  require(demand >= 0, "Request: demand must be >= 0");
  require(finite(rate) && rate >= 0, "Request: rate must be >= 0");
  return Request(vsp_id, bid, value, demand, rate, true);
}

int block_count(double bandwidth, double block_bandwidth) {
  require(block_bandwidth > 0, "block_count: block bandwidth must be > 0");
  require(bandwidth >= 0, "block_count: bandwidth must be >= 0");
  return static_cast<int>(std::floor(bandwidth / block_bandwidth));
}

FrameState::FrameState(int frame_index, double available_bandwidth,
                       double block_bandwidth, double total_bandwidth,
                       std::vector<Request> requests)
    : frame_index_(frame_index),
      available_bandwidth_(available_bandwidth),
      block_bandwidth_(block_bandwidth),
      total_bandwidth_(total_bandwidth),
      block_count_(0),
      requests_(std::move(requests)) {
  require(frame_index >= 0, "FrameState: frame_index must be >= 0");
  require(finite(total_bandwidth) && total_bandwidth >= block_bandwidth,
          "FrameState: total bandwidth must be >= block bandwidth");
  require(finite(available_bandwidth) && available_bandwidth >= 0 &&
              available_bandwidth <= total_bandwidth,
          "FrameState: available bandwidth must lie in [0, total]");
  block_count_ = vsa::block_count(available_bandwidth, block_bandwidth);
}

void AuctionOutcome::validate(const FrameState& frame) const {
  const auto& requests = frame.requests();
  const std::size_t n = requests.size();
  require(winners.size() == n && coefficients.size() == n &&
              weighted_bids.size() == n && payments.size() == n &&
              blocks_allocated.size() == n,
          "AuctionOutcome: field lengths differ from request count");
  int used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    require(winners[i] == 0 || winners[i] == 1,
            "AuctionOutcome: winner indicator must be 0 or 1");
    require(coefficients[i] >= 0, "AuctionOutcome: negative coefficient");
    if (winners[i] == 1) {
      require(blocks_allocated[i] == requests[i].demand(),
              "AuctionOutcome: winner must receive its full demand");
      require(payments[i] >= 0 && payments[i] <= weighted_bids[i],
              "AuctionOutcome: payment outside [0, weighted bid]");
    } else {
      require(blocks_allocated[i] == 0 && payments[i] == 0,
              "AuctionOutcome: loser holds blocks or pays");
    }
    used += blocks_allocated[i];
  }
  require(used == total_blocks_used,
          "AuctionOutcome: total_blocks_used mismatch");
  require(used <= frame.block_count(),
          "AuctionOutcome: allocation exceeds available blocks");
}

void DdpgConfig::validate() const {
  require(buffer_capacity > 0, "ddpg.buffer_capacity must be > 0");
  require(batch_size > 0 && batch_size <= buffer_capacity,
          "ddpg.batch_size must lie in [1, buffer_capacity]");
  require(actor_lr > 0 && critic_lr > 0, "ddpg learning rates must be > 0");
  require(polyak > 0 && polyak <= 1, "ddpg.polyak must lie in (0,1]");
  require(discount >= 0 && discount < 1, "ddpg.discount must lie in [0,1)");
  for (int w : actor_hidden) require(w > 0, "ddpg.actor_hidden widths > 0");
  for (int w : critic_hidden) require(w > 0, "ddpg.critic_hidden widths > 0");
  require(exploration_noise_std >= 0, "ddpg.exploration_noise_std >= 0");
  require(noise_decay >= 0, "ddpg.noise_decay must be >= 0");
  require(noise_min >= 0, "ddpg.noise_min must be >= 0");
  require(max_coefficient > 0, "ddpg.max_coefficient must be > 0");
  require(reward_scale > 0, "ddpg.reward_scale must be > 0");
  require(std::isfinite(reward_shift), "ddpg.reward_shift must be finite");
  require(grad_clip >= 0, "ddpg.grad_clip must be >= 0");
  require(episodes > 0 && frames_per_episode > 0,
          "ddpg episode/frame counts must be > 0");
}

double truthfulness(double bid, double value) {
  if (bid < 0 || value < 0) {
    throw DomainError("truthfulness: bid and value must be non-negative");
  }
  if (value == 0) {
    if (bid != 0) throw DomainError("truthfulness: bid without value");
    return 0.0;
  }
  return bid / value;
}

std::vector<VspProfile> default_profiles() {
  constexpr double kBaseRate = 66.44;
  constexpr double kHighRate = 199.32;
  constexpr double kMaxRate = 500.0;
  constexpr double kSpread = 0.05;
  constexpr double kParticipation = 0.9;
  return {
      VspProfile(1, 1, kBaseRate, kMaxRate, 0.95, kSpread, kParticipation),
      VspProfile(2, 3, kBaseRate, kMaxRate, 0.95, kSpread, kParticipation),
      VspProfile(3, 2, kHighRate, kMaxRate, 0.95, kSpread, kParticipation),
      VspProfile(4, 4, kBaseRate, kMaxRate, 0.95, kSpread, kParticipation),
      VspProfile(5, 1, kBaseRate, kMaxRate, 0.60, kSpread, kParticipation),
  };
}

std::vector<VspProfile> replicated_profiles(int count) {
  require(count >= 1, "replicated_profiles: count must be >= 1");
  const auto base = default_profiles();
  std::vector<VspProfile> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const auto& p = base[i % base.size()];
    out.emplace_back(i + 1, p.qci_priority(), p.min_rate(), p.max_rate(),
                     p.truthfulness_mean(), p.truthfulness_spread(),
                     p.participation_prob());
  }
  return out;
}

}  // namespace vsa
