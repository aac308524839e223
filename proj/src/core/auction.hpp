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

/// Weights of the coefficient c = scale * (qos_weight / q + truth_weight * theta).
struct CoefficientParams {
  double qos_weight = 1.0;
  double truth_weight = 1.0;

  void validate() const;
};

/// One knapsack item as seen by winner determination.
struct Bidder {
  double weighted_bid = 0.0;
  int demand = 0;
  bool eligible = false;
  int priority = 1;  // QCI priority, used only for tie-breaking
};

double compute_coefficient(const VspProfile& profile, const Request& request,
                           const CoefficientParams& params,
                           double agent_scale);

/// True iff the requested spectrum w * sum(n_i) exceeds the available BW_f.
bool auction_triggered(std::span<const Request> requests,
                       double available_bandwidth, double block_bandwidth);

/// Participating bidders with a non-zero demand and a rate meeting the
/// profile's guaranteed minimum.
bool eligible(const Request& request, const VspProfile& profile);

/// Grants every participating bidder its full demand; used when the trigger
/// does not fire.
AuctionOutcome direct_assignment(const FrameState& frame);

/// As above, but only bidders eligible under their profile are served.
AuctionOutcome direct_assignment(const FrameState& frame,
                                 std::span<const VspProfile> profiles);

/// Exact 0/1 knapsack over block capacity maximizing total weighted bid.
///
/// Among optimal sets the one that includes bidders earliest in
/// (priority, index) order wins. Objective values are accumulated in a fixed
/// order so the result matches brute_force_winners bit for bit.
std::vector<int> determine_winners(std::span<const Bidder> bidders,
                                   int capacity);

/// Exhaustive enumeration with the same objective and tie-break.
/// Refuses instances with more than kBruteForceLimit eligible bidders.
inline constexpr int kBruteForceLimit = 20;
std::vector<int> brute_force_winners(std::span<const Bidder> bidders,
                                     int capacity);

/// Total weighted bid of `winners`, summed the same way the solvers do.
double allocation_value(std::span<const Bidder> bidders,
                        std::span<const int> winners);

/// Clarke pivot payments: W(-i) - (W* - wb_i) for winners, 0 for losers.
std::vector<double> clarke_payments(std::span<const Bidder> bidders,
                                    int capacity,
                                    std::span<const int> winners);

/// Full weighted VCG clearing of one frame under the given agent scales.
AuctionOutcome run_auction(const FrameState& frame,
                           std::span<const VspProfile> profiles,
                           const CoefficientParams& params,
                           std::span<const double> agent_scales);

}  // namespace vsa
