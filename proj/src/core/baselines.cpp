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

#include "core/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "core/auction.hpp"

namespace vsa {

AuctionOutcome greedy_allocate(const FrameState& frame,
                               std::span<const VspProfile> profiles) {
  const auto& requests = frame.requests();
  const std::size_t n = requests.size();
  if (profiles.size() != n) {
    throw ContractError("greedy_allocate: profile count mismatch");
  }
  AuctionOutcome out;
  out.triggered = true;
  out.winners.assign(n, 0);
  out.coefficients.assign(n, 0.0);
  out.weighted_bids.assign(n, 0.0);
  out.payments.assign(n, 0.0);
  out.blocks_allocated.assign(n, 0);

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (!requests[i].participating()) continue;
    out.coefficients[i] = 1.0;
    out.weighted_bids[i] = requests[i].bid();
    if (eligible(requests[i], profiles[i])) order.push_back(i);
  }
  auto density = [&](std::size_t i) {
    return requests[i].bid() / requests[i].demand();
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double da = density(a);
    const double db = density(b);
    if (da != db) return da > db;
    if (profiles[a].qci_priority() != profiles[b].qci_priority()) {
      return profiles[a].qci_priority() < profiles[b].qci_priority();
    }
    return a < b;
  });

  int remaining = frame.block_count();
  for (std::size_t i : order) {
    const int demand = requests[i].demand();
    if (demand > remaining) continue;
    remaining -= demand;
    out.winners[i] = 1;
    out.blocks_allocated[i] = demand;
    out.payments[i] = requests[i].bid();
    out.total_blocks_used += demand;
  }
  return out;
}

std::vector<double> unit_policy(std::span<const double> /*state*/,
                                int vsp_count) {
  if (vsp_count < 0) throw ContractError("unit_policy: negative vsp_count");
  return std::vector<double>(static_cast<std::size_t>(vsp_count), 1.0);
}

}  // namespace vsa
