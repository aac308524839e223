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

#include <gtest/gtest.h>

#include "core/baselines.hpp"
#include "core/metrics.hpp"

namespace vsa {
namespace {

EnvConfig config_with_participation(double p) {
  EnvConfig cfg;
  for (auto& prof : cfg.profiles) {
    prof = VspProfile(prof.id(), prof.qci_priority(), prof.min_rate(),
                      prof.max_rate(), prof.truthfulness_mean(),
                      prof.truthfulness_spread(), p);
  }
  return cfg;
}

TEST(Environment, ResetReturnsFifteenFeatures) {
  Environment env(EnvConfig{});
  EXPECT_EQ(env.reset(3).size(), 15u);
}

TEST(Environment, ResetIsDeterministic) {
  Environment a(EnvConfig{});
  Environment b(EnvConfig{});
  EXPECT_EQ(a.reset(11), b.reset(11));
  EXPECT_NE(a.reset(11), a.reset(12));
}

TEST(Environment, StateEntriesInUnitInterval) {
  Environment env(EnvConfig{});
  auto state = env.reset(5);
  for (int f = 0; f < 500; ++f) {
    for (double x : state) {
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
    }
    state = env.step(std::vector<double>(5, 1.0)).next_state;
  }
}

TEST(Environment, NobodyParticipatingGivesZeroStateAndMinimumReward) {
  Environment env(config_with_participation(0.0));
  const auto state = env.reset(1);
  EXPECT_EQ(state, std::vector<double>(15, 0.0));
  const auto step = env.step(std::vector<double>(5, 1.0));
  EXPECT_DOUBLE_EQ(step.reward, -465.08);
  EXPECT_EQ(step.outcome.total_blocks_used, 0);
}

TEST(Environment, RejectsWrongActionLength) {
  Environment env(EnvConfig{});
  env.reset(1);
  EXPECT_THROW(env.step(std::vector<double>(4, 1.0)), ContractError);
}

TEST(Environment, NegativeAndNanActionsAreClamped) {
  Environment env(EnvConfig{});
  env.reset(1);
  const auto step = env.step(std::vector<double>{-1, 1, std::nan(""), 1, 1});
  EXPECT_EQ(step.clamped_actions, 2);
}

TEST(Environment, InvariantsHoldOverManyFrames) {
  Environment env(EnvConfig{});
  env.reset(8);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> scale(0.0, 5.0);
  for (int f = 0; f < 5000; ++f) {
    std::vector<double> action(5);
    for (double& a : action) a = scale(rng);
    const auto step = env.step(action);
    ASSERT_LE(step.outcome.total_blocks_used, step.frame.block_count());
    for (std::size_t i = 0; i < 5; ++i) {
      if (step.outcome.winners[i] == 1) {
        ASSERT_GE(step.frame.requests()[i].rate(),
                  env.config().profiles[i].min_rate());
      }
    }
    ASSERT_DOUBLE_EQ(step.reward, qos_utility(step.outcome,
                                              step.frame.requests(),
                                              env.config().profiles));
  }
}

TEST(Environment, SameSeedAndActionsGiveSameTrace) {
  Environment a(EnvConfig{});
  Environment b(EnvConfig{});
  a.reset(21);
  b.reset(21);
  for (int f = 0; f < 300; ++f) {
    const std::vector<double> action{0.5, 1, 2, 3, 4};
    const auto sa = a.step(action);
    const auto sb = b.step(action);
    ASSERT_EQ(sa.next_state, sb.next_state);
    ASSERT_EQ(sa.reward, sb.reward);
    ASSERT_EQ(sa.outcome.winners, sb.outcome.winners);
  }
}

TEST(Environment, GreedyStepRespectsCapacity) {
  Environment env(EnvConfig{});
  env.reset(4);
  for (int f = 0; f < 1000; ++f) {
    const auto step = env.step_greedy();
    ASSERT_LE(step.outcome.total_blocks_used, step.frame.block_count());
  }
}

TEST(Requests, ParticipationZeroGivesAbsentBidders) {
  auto cfg = config_with_participation(0.0);
  Rng rng(1);
  for (const auto& r : generate_requests(rng, cfg.profiles, cfg)) {
    EXPECT_FALSE(r.participating());
    EXPECT_EQ(r.demand(), 0);
  }
}

TEST(Requests, RateRuleAndBidBound) {
  EnvConfig cfg;
  Rng rng(2);
  for (int f = 0; f < 2000; ++f) {
    for (const auto& r : generate_requests(rng, cfg.profiles, cfg)) {
      if (!r.participating()) continue;
      ASSERT_GE(r.demand(), 1);
      ASSERT_LE(r.demand(), cfg.demand_max);
      ASSERT_DOUBLE_EQ(r.rate(), std::min(r.demand() * 33.22, 500.0));
      ASSERT_LE(r.bid(), r.value());
      ASSERT_GE(r.value(), 50.0);
      ASSERT_LE(r.value(), 150.0);
    }
  }
}

TEST(Requests, SevenBlocksGiveRate23254) {
  EXPECT_DOUBLE_EQ(std::min(7 * 33.22, 500.0), 232.54);
}

TEST(Bandwidth, DegenerateRanges) {
  EnvConfig cfg;
  Rng rng(3);
  cfg.bw_fraction = {1.0, 1.0};
  EXPECT_EQ(sample_bandwidth(rng, cfg), 300e6);
  cfg.bw_fraction = {0.5, 0.5};
  const double bw = sample_bandwidth(rng, cfg);
  EXPECT_EQ(bw, 150e6);
  EXPECT_EQ(block_count(bw, 5e6), 30);
}

TEST(Bandwidth, NeverExceedsTotal) {
  EnvConfig cfg;
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    const double bw = sample_bandwidth(rng, cfg);
    ASSERT_LE(bw, 300e6);
    ASSERT_GE(bw, 150e6);
  }
}

TEST(Reward, SingleWinnerTerm) {
  const auto profiles = default_profiles();
  std::vector<Request> requests{Request::make(1, 50, 100, 3, 100)};
  for (int i = 2; i <= 5; ++i) requests.push_back(Request::absent(i));
  AuctionOutcome out;
  out.winners = {1, 0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(frame_reward(out, requests, profiles),
                   100 - 66.44 - (3 * 66.44 + 199.32));
}

TEST(EnvConfig, RejectsBadValues) {
  EnvConfig cfg;
  cfg.block_bandwidth = 0;
  EXPECT_THROW(cfg.validate(), ContractError);
  cfg = EnvConfig{};
  cfg.bw_fraction = {0.9, 0.5};
  EXPECT_THROW(cfg.validate(), ContractError);
  cfg = EnvConfig{};
  cfg.per_block_rate = 0;
  EXPECT_THROW(cfg.validate(), ContractError);
  cfg = EnvConfig{};
  cfg.total_bandwidth = 1e6;
  EXPECT_THROW(cfg.validate(), ContractError);
}

TEST(UnitPolicy, AllOnesIndependentOfState) {
  EXPECT_EQ(unit_policy(std::vector<double>(15, 0.3), 5),
            std::vector<double>(5, 1.0));
  EXPECT_EQ(unit_policy(std::vector<double>(15, 0.9), 5),
            std::vector<double>(5, 1.0));
}

TEST(Greedy, ThreeItemInstancePicksDensest) {
  const std::vector<VspProfile> profiles{
      VspProfile(1, 1, 33.22, 500, 0.95, 0.05, 0.9),
      VspProfile(2, 1, 33.22, 500, 0.95, 0.05, 0.9),
      VspProfile(3, 1, 33.22, 500, 0.95, 0.05, 0.9)};
  FrameState f(0, 35e6, 5e6, 300e6,
               {Request::make(1, 10, 20, 3, 99.66),
                Request::make(2, 12, 20, 4, 132.88),
                Request::make(3, 21, 30, 5, 166.1)});
  const auto out = greedy_allocate(f, profiles);
  EXPECT_EQ(out.winners, (std::vector<int>{0, 0, 1}));
  EXPECT_DOUBLE_EQ(out.payments[2], 21.0);
  EXPECT_NO_THROW(out.validate(f));
}

TEST(Greedy, EmptyAndSingle) {
  const std::vector<VspProfile> one{
      VspProfile(1, 1, 33.22, 500, 0.95, 0.05, 0.9)};
  FrameState empty(0, 35e6, 5e6, 300e6, {Request::absent(1)});
  EXPECT_EQ(greedy_allocate(empty, one).total_blocks_used, 0);
  FrameState single(0, 35e6, 5e6, 300e6, {Request::make(1, 5, 9, 4, 132.88)});
  EXPECT_EQ(greedy_allocate(single, one).winners, std::vector<int>{1});
}

TEST(Greedy, NeverBeatsExactOptimum) {
  EnvConfig cfg;
  Rng rng(6);
  for (int trial = 0; trial < 2000; ++trial) {
    const double bw = sample_bandwidth(rng, cfg);
    FrameState f(0, bw, 5e6, 300e6,
                 generate_requests(rng, cfg.profiles, cfg));
    const auto greedy = greedy_allocate(f, cfg.profiles);
    greedy.validate(f);
    std::vector<Bidder> bidders;
    double greedy_value = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& r = f.requests()[i];
      bidders.push_back({r.bid(), r.demand(), eligible(r, cfg.profiles[i]),
                         cfg.profiles[i].qci_priority()});
      greedy_value += greedy.winners[i] * r.bid();
    }
    const auto best = determine_winners(bidders, f.block_count());
    ASSERT_LE(greedy_value, allocation_value(bidders, best) + 1e-9);
    ASSERT_EQ(greedy.winners, greedy_allocate(f, cfg.profiles).winners);
  }
}

}  // namespace
}  // namespace vsa
