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

#include "core/environment.hpp"

#include <algorithm>
#include <cmath>

#include "core/baselines.hpp"

namespace vsa {
namespace {

void require(bool condition, const char* message) {
  if (!condition) throw ContractError(message);
}

}  // namespace

void EnvConfig::validate() const {
  require(!profiles.empty(), "env.profiles must not be empty");
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    require(profiles[i].id() == static_cast<int>(i) + 1,
            "env.profiles ids must be 1..I in order");
  }
  require(block_bandwidth > 0, "env.block_bandwidth_hz must be > 0");
  require(total_bandwidth >= block_bandwidth,
          "env.total_bandwidth_hz must be >= env.block_bandwidth_hz");
  require(bw_fraction.lo > 0 && bw_fraction.lo <= bw_fraction.hi &&
              bw_fraction.hi <= 1,
          "env.bw_fraction must satisfy 0 < lo <= hi <= 1");
  require(demand_max >= 1, "env.demand_max must be >= 1");
  require(value_range.lo > 0 && value_range.lo <= value_range.hi,
          "env.value range must satisfy 0 < lo <= hi");
  require(per_block_rate > 0, "env.per_block_rate must be > 0");
  require(frames_per_episode >= 1, "env.frames_per_episode must be >= 1");
  coefficients.validate();
}

std::vector<Request> generate_requests(Rng& rng,
                                       std::span<const VspProfile> profiles,
                                       const EnvConfig& config) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> value_dist(config.value_range.lo,
                                                    config.value_range.hi);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> demand_dist(1, config.demand_max);

  std::vector<Request> requests;
  requests.reserve(profiles.size());
  for (const auto& p : profiles) {
    // Every draw happens whether or not the bidder participates, so the
    // stream stays aligned across participation settings.
    const double u = unit(rng);
    const double value = value_dist(rng);
    const double z = normal(rng);
    const int demand = demand_dist(rng);
    if (u >= p.participation_prob()) {
      requests.push_back(Request::absent(p.id()));
      continue;
    }
    const double theta = std::clamp(
        p.truthfulness_mean() + p.truthfulness_spread() * z, 0.0, 1.0);
    const double rate = std::min(demand * config.per_block_rate, p.max_rate());
    requests.push_back(Request::make(p.id(), theta * value, value, demand, rate));
  }
  return requests;
}

double sample_bandwidth(Rng& rng, const EnvConfig& config) {
  std::uniform_real_distribution<double> fraction(config.bw_fraction.lo,
                                                  config.bw_fraction.hi);
  const double f = config.bw_fraction.lo == config.bw_fraction.hi
                       ? config.bw_fraction.lo
                       : fraction(rng);
  return std::min(config.total_bandwidth * f, config.total_bandwidth);
}

std::vector<double> encode_state(std::span<const Request> requests,
                                 const EnvConfig& config) {
  std::vector<double> state;
  state.reserve(3 * requests.size());
  const double value_scale = config.value_range.hi;
  const double demand_scale = config.demand_max;
  for (const auto& r : requests) {
    state.push_back(r.bid() / value_scale);
    state.push_back(r.value() / value_scale);
    state.push_back(r.demand() / demand_scale);
  }
  return state;
}

double frame_reward(const AuctionOutcome& outcome,
                    std::span<const Request> requests,
                    std::span<const VspProfile> profiles) {
  if (outcome.winners.size() != requests.size() ||
      profiles.size() != requests.size()) {
    throw ContractError("frame_reward: length mismatch");
  }
  double reward = 0.0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    reward += outcome.winners[i] * requests[i].rate() - profiles[i].min_rate();
  }
  return reward;
}

Environment::Environment(EnvConfig config)
    : config_((config.validate(), std::move(config))),
      rng_(config_.seed),
      frame_(draw_frame(0)) {}

FrameState Environment::draw_frame(int index) {
  const double bandwidth = sample_bandwidth(rng_, config_);
  auto requests = generate_requests(rng_, config_.profiles, config_);
  return FrameState(index, bandwidth, config_.block_bandwidth,
                    config_.total_bandwidth, std::move(requests));
}

std::vector<double> Environment::reset(std::uint64_t seed) {
  rng_.seed(seed);
  frame_ = draw_frame(0);
  return encode_state(frame_.requests(), config_);
}

StepResult Environment::step(std::span<const double> action) {
  const std::size_t n = config_.profiles.size();
  if (action.size() != n) {
    throw ContractError("Environment::step: action length != vsp count");
  }
  std::vector<double> scales(action.begin(), action.end());
  int clamped = 0;
  for (double& s : scales) {
    if (!(s >= 0)) {
      s = 0.0;
      ++clamped;
    }
  }
  const auto& requests = frame_.requests();
  AuctionOutcome outcome;
  if (auction_triggered(requests, frame_.available_bandwidth(),
                        frame_.block_bandwidth())) {
    outcome = run_auction(frame_, config_.profiles, config_.coefficients,
                          scales);
  } else {
    outcome = direct_assignment(frame_, config_.profiles);
    for (std::size_t i = 0; i < n; ++i) {
      outcome.coefficients[i] = compute_coefficient(
          config_.profiles[i], requests[i], config_.coefficients, scales[i]);
      outcome.weighted_bids[i] = outcome.coefficients[i] * requests[i].bid();
    }
  }
  return finish(std::move(outcome), clamped);
}

StepResult Environment::step_greedy() {
  const auto& requests = frame_.requests();
  AuctionOutcome outcome =
      auction_triggered(requests, frame_.available_bandwidth(),
                        frame_.block_bandwidth())
          ? greedy_allocate(frame_, config_.profiles)
          : direct_assignment(frame_, config_.profiles);
  return finish(std::move(outcome), 0);
}

StepResult Environment::finish(AuctionOutcome outcome, int clamped) {
  outcome.validate(frame_);
  const double reward =
      frame_reward(outcome, frame_.requests(), config_.profiles);
  FrameState cleared = frame_;
  frame_ = draw_frame(cleared.frame_index() + 1);
  return StepResult{encode_state(frame_.requests(), config_), reward,
                    std::move(outcome), std::move(cleared), clamped};
}

}  // namespace vsa
