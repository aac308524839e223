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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace vsa {
namespace {

void check_bidders(std::span<const Bidder> bidders, int capacity) {
  if (capacity < 0) throw ContractError("knapsack: capacity must be >= 0");
  for (const auto& b : bidders) {
    if (!(b.weighted_bid >= 0) || !std::isfinite(b.weighted_bid)) {
      throw ContractError("knapsack: weighted bids must be finite and >= 0");
    }
    if (b.demand < 0) throw ContractError("knapsack: demand must be >= 0");
  }
}

// Eligible bidder indices in tie-break order: higher priority (smaller QCI)
// first, then lower index.
std::vector<std::size_t> rank_order(std::span<const Bidder> bidders) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    if (bidders[i].eligible) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return bidders[a].priority < bidders[b].priority;
                   });
  return order;
}

// Right fold in rank order: wb_{r0} + (wb_{r1} + (... + 0.0)). This is exactly
// the accumulation the knapsack table performs.
double folded_value(std::span<const Bidder> bidders,
                    std::span<const std::size_t> order,
                    std::span<const int> winners) {
  double total = 0.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (winners[*it] == 1) total = bidders[*it].weighted_bid + total;
  }
  return total;
}

}  // namespace

void CoefficientParams::validate() const {
  if (!(qos_weight >= 0) || !(truth_weight >= 0) ||
      !(qos_weight + truth_weight > 0)) {
    throw ContractError(
        "CoefficientParams: weights must be >= 0 with a positive sum");
  }
}

double compute_coefficient(const VspProfile& profile, const Request& request,
                           const CoefficientParams& params,
                           double agent_scale) {
  if (!(agent_scale >= 0)) {
    throw ContractError("compute_coefficient: agent_scale must be >= 0");
  }
  if (!request.participating()) return 0.0;
  const double theta = truthfulness(request.bid(), request.value());
  return agent_scale * (params.qos_weight * profile.priority_weight() +
                        params.truth_weight * theta);
}

bool auction_triggered(std::span<const Request> requests,
                       double available_bandwidth, double block_bandwidth) {
  if (!(block_bandwidth > 0)) {
    throw ContractError("auction_triggered: block bandwidth must be > 0");
  }
  std::int64_t demand = 0;
  for (const auto& r : requests) demand += r.demand();
  return block_bandwidth * static_cast<double>(demand) > available_bandwidth;
}

bool eligible(const Request& request, const VspProfile& profile) {
  return request.participating() && request.demand() > 0 &&
         request.rate() >= profile.min_rate();
}

namespace {

AuctionOutcome assign_all(const FrameState& frame,
                          std::span<const VspProfile> profiles) {
  const auto& requests = frame.requests();
  const std::size_t n = requests.size();
  if (!profiles.empty() && profiles.size() != n) {
    throw ContractError("direct_assignment: profile count mismatch");
  }
  AuctionOutcome out;
  out.winners.assign(n, 0);
  out.coefficients.assign(n, 0.0);
  out.weighted_bids.assign(n, 0.0);
  out.payments.assign(n, 0.0);
  out.blocks_allocated.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = requests[i];
    const bool served = profiles.empty()
                            ? r.participating() && r.demand() > 0
                            : eligible(r, profiles[i]);
    if (!served) continue;
    out.winners[i] = 1;
    out.blocks_allocated[i] = r.demand();
    out.total_blocks_used += r.demand();
  }
  out.triggered = false;
  return out;
}

}  // namespace

AuctionOutcome direct_assignment(const FrameState& frame) {
  return assign_all(frame, {});
}

AuctionOutcome direct_assignment(const FrameState& frame,
                                 std::span<const VspProfile> profiles) {
  if (profiles.size() != frame.requests().size()) {
    throw ContractError("direct_assignment: profile count mismatch");
  }
  return assign_all(frame, profiles);
}

std::vector<int> determine_winners(std::span<const Bidder> bidders,
                                   int capacity) {
  check_bidders(bidders, capacity);
  const auto order = rank_order(bidders);
  const std::size_t m = order.size();
  const std::size_t width = static_cast<std::size_t>(capacity) + 1;

  // best[k * width + c]: optimum over the rank-order suffix k.. with c blocks.
  std::vector<double> best((m + 1) * width, 0.0);
  for (std::size_t k = m; k-- > 0;) {
    const Bidder& item = bidders[order[k]];
    const double* next = &best[(k + 1) * width];
    double* cur = &best[k * width];
    for (std::size_t c = 0; c < width; ++c) {
      double v = next[c];
      if (static_cast<std::size_t>(item.demand) <= c) {
        v = std::max(v, item.weighted_bid + next[c - item.demand]);
      }
      cur[c] = v;
    }
  }

  std::vector<int> winners(bidders.size(), 0);
  std::size_t c = width - 1;
  for (std::size_t k = 0; k < m; ++k) {
    const Bidder& item = bidders[order[k]];
    if (static_cast<std::size_t>(item.demand) > c) continue;
    const double with =
        item.weighted_bid + best[(k + 1) * width + c - item.demand];
    if (with == best[k * width + c]) {
      winners[order[k]] = 1;
      c -= item.demand;
    }
  }
  return winners;
}

std::vector<int> brute_force_winners(std::span<const Bidder> bidders,
                                     int capacity) {
  check_bidders(bidders, capacity);
  const auto order = rank_order(bidders);
  const std::size_t m = order.size();
  if (m > static_cast<std::size_t>(kBruteForceLimit)) {
    throw ContractError("brute_force_winners: too many eligible bidders");
  }

  // Bit k of a mask selects order[k].
  std::uint32_t best_mask = 0;
  double best_value = 0.0;
  bool have_best = false;
  const std::uint32_t limit = std::uint32_t{1} << m;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::int64_t used = 0;
    double value = 0.0;
    for (std::size_t k = m; k-- > 0;) {
      if (mask >> k & 1U) {
        used += bidders[order[k]].demand;
        value = bidders[order[k]].weighted_bid + value;
      }
    }
    if (used > capacity) continue;
    bool better = !have_best || value > best_value;
    if (!better && value == best_value) {
      for (std::size_t k = 0; k < m; ++k) {
        const bool a = mask >> k & 1U;
        const bool b = best_mask >> k & 1U;
        if (a != b) {
          better = a;
          break;
        }
      }
    }
    if (better) {
      best_mask = mask;
      best_value = value;
      have_best = true;
    }
  }

  std::vector<int> winners(bidders.size(), 0);
  for (std::size_t k = 0; k < m; ++k) {
    if (best_mask >> k & 1U) winners[order[k]] = 1;
  }
  return winners;
}

double allocation_value(std::span<const Bidder> bidders,
                        std::span<const int> winners) {
  if (winners.size() != bidders.size()) {
    throw ContractError("allocation_value: length mismatch");
  }
  const auto order = rank_order(bidders);
  return folded_value(bidders, order, winners);
}

std::vector<double> clarke_payments(std::span<const Bidder> bidders,
                                    int capacity,
                                    std::span<const int> winners) {
  if (winners.size() != bidders.size()) {
    throw ContractError("clarke_payments: length mismatch");
  }
  std::vector<double> payments(bidders.size(), 0.0);
  std::vector<Bidder> without(bidders.begin(), bidders.end());
  std::vector<int> others(winners.begin(), winners.end());
  for (std::size_t i = 0; i < bidders.size(); ++i) {
    if (winners[i] != 1) continue;
    without[i].eligible = false;
    others[i] = 0;
    // Value the others' share in the reduced ordering so both terms are
    // folded identically; W(-i) >= that share holds exactly.
    const double pivot =
        allocation_value(without, determine_winners(without, capacity));
    const double others_value = allocation_value(without, others);
    // Bounded by wb_i in exact arithmetic; min() absorbs a last-ulp excess.
    payments[i] =
        std::min(std::max(pivot - others_value, 0.0), bidders[i].weighted_bid);
    without[i].eligible = bidders[i].eligible;
    others[i] = 1;
  }
  return payments;
}

AuctionOutcome run_auction(const FrameState& frame,
                           std::span<const VspProfile> profiles,
                           const CoefficientParams& params,
                           std::span<const double> agent_scales) {
  const auto& requests = frame.requests();
  const std::size_t n = requests.size();
  if (profiles.size() != n || agent_scales.size() != n) {
    throw ContractError("run_auction: profile/scale count mismatch");
  }
  AuctionOutcome out;
  out.triggered = true;
  out.coefficients.resize(n);
  out.weighted_bids.resize(n);
  out.blocks_allocated.assign(n, 0);
  std::vector<Bidder> bidders(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c =
        compute_coefficient(profiles[i], requests[i], params, agent_scales[i]);
    out.coefficients[i] = c;
    out.weighted_bids[i] = c * requests[i].bid();
    bidders[i] = Bidder{out.weighted_bids[i], requests[i].demand(),
                        eligible(requests[i], profiles[i]),
                        profiles[i].qci_priority()};
  }
  out.winners = determine_winners(bidders, frame.block_count());
  out.payments = clarke_payments(bidders, frame.block_count(), out.winners);
  for (std::size_t i = 0; i < n; ++i) {
    if (out.winners[i] == 1) {
      out.blocks_allocated[i] = requests[i].demand();
      out.total_blocks_used += requests[i].demand();
    }
  }
  return out;
}

}  // namespace vsa
