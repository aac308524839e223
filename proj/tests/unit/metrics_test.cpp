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

#include <gtest/gtest.h>

#include <random>

namespace vsa {
namespace {

FrameState frame_with_blocks(int blocks, int index = 0) {
  return FrameState(index, blocks * 5e6, 5e6, 300e6, {Request::absent(1)});
}

AuctionOutcome used(int blocks, bool triggered = true) {
  AuctionOutcome out;
  out.winners = {blocks > 0 ? 1 : 0};
  out.total_blocks_used = blocks;
  out.triggered = triggered;
  return out;
}

TEST(Utilization, FullAndEmpty) {
  std::vector<FrameState> frames{frame_with_blocks(60), frame_with_blocks(40)};
  std::vector<AuctionOutcome> full{used(60), used(40)};
  std::vector<AuctionOutcome> none{used(0), used(0)};
  EXPECT_EQ(spectrum_utilization(full, frames), 1.0);
  EXPECT_EQ(spectrum_utilization(none, frames), 0.0);
}

TEST(Utilization, PooledRatio) {
  std::vector<FrameState> frames{frame_with_blocks(60), frame_with_blocks(60)};
  std::vector<AuctionOutcome> outcomes{used(30), used(60)};
  EXPECT_DOUBLE_EQ(spectrum_utilization(outcomes, frames), 0.75);
}

TEST(Utilization, SkipsUntriggeredFramesUnlessAskedNotTo) {
  std::vector<FrameState> frames{frame_with_blocks(60), frame_with_blocks(60)};
  std::vector<AuctionOutcome> outcomes{used(30), used(10, false)};
  EXPECT_DOUBLE_EQ(spectrum_utilization(outcomes, frames), 0.5);
  EXPECT_DOUBLE_EQ(spectrum_utilization_all(outcomes, frames), 40.0 / 120);
}

TEST(Utilization, ErrorsWithoutAuctions) {
  std::vector<FrameState> frames{frame_with_blocks(60)};
  std::vector<AuctionOutcome> outcomes{used(10, false)};
  EXPECT_THROW(spectrum_utilization(outcomes, frames), DomainError);
  EXPECT_THROW(spectrum_utilization({}, {}), DomainError);
}

TEST(Utilization, PermutationInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> cap(1, 60);
  std::vector<FrameState> frames;
  std::vector<AuctionOutcome> outcomes;
  for (int i = 0; i < 50; ++i) {
    const int c = cap(rng);
    frames.push_back(frame_with_blocks(c));
    outcomes.push_back(used(std::uniform_int_distribution<int>(0, c)(rng)));
  }
  const double before = spectrum_utilization(outcomes, frames);
  std::vector<int> order(50);
  for (int i = 0; i < 50; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<FrameState> f2;
  std::vector<AuctionOutcome> o2;
  for (int i : order) {
    f2.push_back(frames[i]);
    o2.push_back(outcomes[i]);
  }
  const double after = spectrum_utilization(o2, f2);
  EXPECT_EQ(before, after);
  EXPECT_GE(before, 0.0);
  EXPECT_LE(before, 1.0);
}

TEST(Jain, ReferenceValues) {
  EXPECT_DOUBLE_EQ(jain_fairness(std::vector<double>{1, 1, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(jain_fairness(std::vector<double>{1, 0, 0, 0}), 0.25);
  EXPECT_DOUBLE_EQ(jain_fairness(std::vector<double>{2, 1, 1}), 16.0 / 18);
}

TEST(Jain, Errors) {
  EXPECT_THROW(jain_fairness(std::vector<double>{0, 0}), DomainError);
  EXPECT_THROW(jain_fairness(std::vector<double>{}), DomainError);
  EXPECT_THROW(jain_fairness(std::vector<double>{1, -1}), ContractError);
}

TEST(Jain, ScaleInvariantAndBounded) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 100);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> t(1 + trial % 20);
    for (double& x : t) x = u(rng);
    t[0] += 1.0;
    const double j = jain_fairness(t);
    ASSERT_GE(j, 1.0 / t.size() - 1e-12);
    ASSERT_LE(j, 1.0 + 1e-12);
    auto scaled = t;
    for (double& x : scaled) x *= 7.5;
    ASSERT_NEAR(jain_fairness(scaled), j, 1e-12);
  }
}

TEST(WinPercentage, Ratios) {
  std::vector<AuctionOutcome> outcomes;
  for (int i = 0; i < 500; ++i) {
    AuctionOutcome o;
    o.triggered = true;
    o.winners = {1, i < 170 ? 1 : 0, 0};
    outcomes.push_back(o);
  }
  EXPECT_EQ(winning_percentage(outcomes, 1), 1.0);
  EXPECT_DOUBLE_EQ(winning_percentage(outcomes, 2), 0.34);
  EXPECT_EQ(winning_percentage(outcomes, 3), 0.0);
}

TEST(WinPercentage, IgnoresDirectAssignmentAndSignalsEmpty) {
  AuctionOutcome direct;
  direct.winners = {1};
  std::vector<AuctionOutcome> outcomes{direct};
  EXPECT_THROW(winning_percentage(outcomes, 1), DomainError);
}

TEST(MeanReward, Basics) {
  EXPECT_DOUBLE_EQ(mean_episode_reward(std::vector<double>{1, 2, 3}), 2.0);
  EXPECT_DOUBLE_EQ(mean_episode_reward(std::vector<double>(9, -4.5)), -4.5);
  EXPECT_DOUBLE_EQ(mean_episode_reward(std::vector<double>(250, -465.08)),
                   -465.08);
  EXPECT_THROW(mean_episode_reward(std::vector<double>{}), DomainError);
}

TEST(Summaries, AgreeWithOutcomeMetrics) {
  std::vector<FrameSummary> frames;
  std::vector<FrameState> states;
  std::vector<AuctionOutcome> outcomes;
  for (int i = 0; i < 10; ++i) {
    states.push_back(frame_with_blocks(50, i));
    outcomes.push_back(used(i * 5, i % 3 != 0));
    frames.push_back(summarize(1, states.back(), outcomes.back(), 0.0));
  }
  EXPECT_DOUBLE_EQ(spectrum_utilization(frames),
                   spectrum_utilization(outcomes, states));
  EXPECT_DOUBLE_EQ(winning_percentage(frames, 1),
                   winning_percentage(outcomes, 1));
  EXPECT_EQ(last_triggered(frames, 3).size(), 3u);
  EXPECT_EQ(last_triggered(frames, 3).back().frame, 8);
  EXPECT_EQ(last_triggered(frames, 3).front().frame, 5);
  EXPECT_EQ(last_triggered(frames, 100).size(), 6u);
}

}  // namespace
}  // namespace vsa
