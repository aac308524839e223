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

#include "core/auction.hpp"

#include <gtest/gtest.h>

#include <random>

namespace vsa {
namespace {

std::vector<Bidder> three_items() {
  return {{10, 3, true, 1}, {12, 4, true, 1}, {21, 5, true, 1}};
}

VspProfile profile(int id, int q, double min_rate = 66.44) {
  return VspProfile(id, q, min_rate, 500, 0.95, 0.05, 0.9);
}

std::vector<Bidder> random_instance(std::mt19937_64& rng, int max_bidders,
                                    bool integer_bids) {
  std::uniform_int_distribution<int> count(0, max_bidders);
  std::uniform_int_distribution<int> demand(1, 20);
  std::uniform_int_distribution<int> priority(1, 4);
  std::uniform_real_distribution<double> bid(0.0, 100.0);
  std::uniform_int_distribution<int> small_bid(0, 6);
  std::bernoulli_distribution eligible(0.85);
  std::vector<Bidder> out(count(rng));
  for (auto& b : out) {
    b.weighted_bid = integer_bids ? small_bid(rng) : bid(rng);
    b.demand = demand(rng);
    b.eligible = eligible(rng);
    b.priority = priority(rng);
  }
  return out;
}

int blocks(std::span<const Bidder> bidders, std::span<const int> winners) {
  int used = 0;
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    used += winners[i] * bidders[i].demand;
  }
  return used;
}

TEST(Coefficient, ZeroForNonParticipant) {
  EXPECT_EQ(compute_coefficient(profile(1, 1), Request::absent(1), {}, 3.0),
            0.0);
}

TEST(Coefficient, WeightedPriorityPlusTruthfulness) {
  const auto truthful = Request::make(1, 100, 100, 2, 66.44);
  EXPECT_DOUBLE_EQ(compute_coefficient(profile(1, 1), truthful, {1, 1}, 1.0),
                   2.0);
  const auto half = Request::make(1, 50, 100, 2, 66.44);
  EXPECT_DOUBLE_EQ(compute_coefficient(profile(1, 2), half, {1, 1}, 2.0), 2.0);
}

TEST(Coefficient, RejectsNegativeScale) {
  const auto r = Request::make(1, 50, 100, 2, 66.44);
  EXPECT_THROW(compute_coefficient(profile(1, 1), r, {}, -0.5), ContractError);
}

TEST(Coefficient, NonNegativeForAllInputs) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 500; ++i) {
    const double v = 1 + 100 * u(rng);
    const auto r = Request::make(1, u(rng) * v, v, 3, 99.66);
    const double c = compute_coefficient(profile(1, 1 + i % 4), r,
                                         {u(rng), u(rng) + 0.01}, 5 * u(rng));
    EXPECT_GE(c, 0.0);
  }
}

TEST(CoefficientParams, RejectsAllZero) {
  EXPECT_THROW((CoefficientParams{0, 0}.validate()), ContractError);
  EXPECT_THROW((CoefficientParams{-1, 2}.validate()), ContractError);
}

TEST(Trigger, StrictInequality) {
  auto demand = [](std::vector<int> ns) {
    std::vector<Request> out;
    int id = 1;
    for (int n : ns) out.push_back(Request::make(id++, 10, 20, n, 100));
    return out;
  };
  EXPECT_TRUE(auction_triggered(demand({30, 40}), 300e6, 5e6));
  EXPECT_FALSE(auction_triggered({}, 300e6, 5e6));
  EXPECT_FALSE(auction_triggered(demand({20, 40}), 300e6, 5e6));
}

TEST(DirectAssignment, EveryoneServed) {
  FrameState f(0, 300e6, 5e6, 300e6,
               {Request::make(1, 5, 10, 10, 332.2),
                Request::make(2, 5, 10, 10, 332.2)});
  const auto out = direct_assignment(f);
  EXPECT_EQ(out.winners, (std::vector<int>{1, 1}));
  EXPECT_EQ(out.total_blocks_used, 20);
  EXPECT_FALSE(out.triggered);
  EXPECT_EQ(out.payments, (std::vector<double>{0, 0}));
}

TEST(DirectAssignment, NoParticipants) {
  FrameState f(0, 300e6, 5e6, 300e6,
               {Request::absent(1), Request::absent(2)});
  const auto out = direct_assignment(f);
  EXPECT_EQ(out.winners, (std::vector<int>{0, 0}));
  EXPECT_EQ(out.total_blocks_used, 0);
}

TEST(DirectAssignment, ExactFit) {
  FrameState f(0, 300e6, 5e6, 300e6, {Request::make(1, 5, 10, 60, 500)});
  EXPECT_EQ(direct_assignment(f).winners, std::vector<int>{1});
}

TEST(DirectAssignment, ProfileFilterSkipsIneligible) {
  FrameState f(0, 300e6, 5e6, 300e6,
               {Request::make(1, 5, 10, 1, 33.22),
                Request::make(2, 5, 10, 3, 99.66)});
  const std::vector<VspProfile> profiles{profile(1, 1), profile(2, 1)};
  EXPECT_EQ(direct_assignment(f, profiles).winners,
            (std::vector<int>{0, 1}));
}

TEST(Eligible, RateFloor) {
  EXPECT_TRUE(eligible(Request::make(1, 5, 10, 3, 100), profile(1, 1)));
  EXPECT_FALSE(eligible(Request::make(1, 5, 10, 3, 50), profile(1, 1)));
  EXPECT_FALSE(eligible(Request::absent(1), profile(1, 1)));
  EXPECT_FALSE(eligible(Request::make(1, 5, 10, 0, 100), profile(1, 1)));
}

TEST(Winners, ThreeItemInstance) {
  const auto items = three_items();
  const std::vector<int> expected{1, 1, 0};
  EXPECT_EQ(determine_winners(items, 7), expected);
  EXPECT_EQ(brute_force_winners(items, 7), expected);
  EXPECT_DOUBLE_EQ(allocation_value(items, expected), 22.0);
}

TEST(Winners, AllIneligible) {
  std::vector<Bidder> items{{10, 3, false, 1}, {12, 4, false, 2}};
  EXPECT_EQ(determine_winners(items, 50), (std::vector<int>{0, 0}));
  EXPECT_EQ(brute_force_winners(items, 50), (std::vector<int>{0, 0}));
}

TEST(Winners, EmptyAndZeroCapacity) {
  EXPECT_TRUE(determine_winners({}, 10).empty());
  EXPECT_TRUE(brute_force_winners({}, 10).empty());
  const auto items = three_items();
  EXPECT_EQ(determine_winners(items, 0), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(brute_force_winners(items, 0), (std::vector<int>{0, 0, 0}));
}

TEST(Winners, SingleItemFillingCapacity) {
  std::vector<Bidder> items{{5, 9, true, 2}};
  EXPECT_EQ(determine_winners(items, 9), std::vector<int>{1});
  EXPECT_EQ(determine_winners(items, 8), std::vector<int>{0});
}

TEST(Winners, TieGoesToHigherPriorityThenLowerIndex) {
  // Either bidder alone fits; equal bids.
  std::vector<Bidder> by_priority{{7, 5, true, 3}, {7, 5, true, 1}};
  EXPECT_EQ(determine_winners(by_priority, 5), (std::vector<int>{0, 1}));
  std::vector<Bidder> by_index{{7, 5, true, 2}, {7, 5, true, 2}};
  EXPECT_EQ(determine_winners(by_index, 5), (std::vector<int>{1, 0}));
}

TEST(Winners, BruteForceRefusesLargeInstances) {
  std::vector<Bidder> items(kBruteForceLimit + 1, Bidder{1, 1, true, 1});
  EXPECT_THROW(brute_force_winners(items, 5), ContractError);
  EXPECT_NO_THROW(determine_winners(items, 5));
}

TEST(Winners, RejectsNegativeCapacityOrBid) {
  EXPECT_THROW(determine_winners(three_items(), -1), ContractError);
  std::vector<Bidder> bad{{-1, 1, true, 1}};
  EXPECT_THROW(determine_winners(bad, 3), ContractError);
}

TEST(Winners, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> cap(0, 60);
  for (int trial = 0; trial < 2000; ++trial) {
    // Half the trials use small integer bids so that exact ties occur.
    const auto items = random_instance(rng, 12, trial % 2 == 1);
    const int capacity = cap(rng);
    const auto dp = determine_winners(items, capacity);
    const auto bf = brute_force_winners(items, capacity);
    ASSERT_EQ(allocation_value(items, dp), allocation_value(items, bf));
    ASSERT_EQ(dp, bf) << "trial " << trial;
    ASSERT_LE(blocks(items, dp), capacity);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!items[i].eligible) {
        ASSERT_EQ(dp[i], 0);
      }
    }
  }
}

TEST(Winners, OptimumMonotoneInCapacity) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto items = random_instance(rng, 10, false);
    double prev = 0.0;
    for (int c = 0; c <= 60; ++c) {
      const double v = allocation_value(items, determine_winners(items, c));
      ASSERT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(Winners, RaisingAWinnersBidKeepsItWinning) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> cap(1, 60);
  std::uniform_real_distribution<double> factor(1.5, 4.0);
  for (int trial = 0; trial < 500; ++trial) {
    auto items = random_instance(rng, 10, false);
    const int capacity = cap(rng);
    const auto winners = determine_winners(items, capacity);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (winners[i] != 1) continue;
      auto boosted = items;
      boosted[i].weighted_bid *= factor(rng);
      ASSERT_EQ(determine_winners(boosted, capacity)[i], 1);
    }
  }
}

TEST(Payments, ThreeItemInstance) {
  const auto items = three_items();
  const auto winners = determine_winners(items, 7);
  const auto pay = clarke_payments(items, 7, winners);
  EXPECT_DOUBLE_EQ(pay[0], 9.0);
  EXPECT_DOUBLE_EQ(pay[1], 11.0);
  EXPECT_EQ(pay[2], 0.0);
}

TEST(Payments, SoleBidderPaysNothing) {
  std::vector<Bidder> items{{42, 4, true, 1}, {30, 4, false, 1}};
  const auto winners = determine_winners(items, 10);
  EXPECT_EQ(clarke_payments(items, 10, winners),
            (std::vector<double>{0.0, 0.0}));
}

TEST(Payments, IndividuallyRational) {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> cap(0, 60);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto items = random_instance(rng, 12, trial % 3 == 0);
    const int capacity = cap(rng);
    const auto winners = determine_winners(items, capacity);
    const auto pay = clarke_payments(items, capacity, winners);
    for (std::size_t i = 0; i < items.size(); ++i) {
      ASSERT_GE(pay[i], 0.0);
      if (winners[i] == 1) {
        ASSERT_LE(pay[i], items[i].weighted_bid);
      } else {
        ASSERT_EQ(pay[i], 0.0);
      }
    }
  }
}

TEST(RunAuction, ProducesValidOutcome) {
  const std::vector<VspProfile> profiles{profile(1, 1), profile(2, 3),
                                         profile(3, 2, 199.32)};
  FrameState f(0, 50e6, 5e6, 300e6,
               {Request::make(1, 90, 100, 6, 199.32),
                Request::make(2, 80, 100, 5, 166.1),
                Request::make(3, 95, 100, 7, 232.54)});
  const std::vector<double> scales{1, 1, 1};
  const auto out = run_auction(f, profiles, {}, scales);
  EXPECT_NO_THROW(out.validate(f));
  EXPECT_TRUE(out.triggered);
  EXPECT_LE(out.total_blocks_used, 10);
  EXPECT_DOUBLE_EQ(out.coefficients[0], 1.0 + 0.9);
  EXPECT_DOUBLE_EQ(out.weighted_bids[0], 1.9 * 90);
}

}  // namespace
}  // namespace vsa
