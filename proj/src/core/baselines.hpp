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

/// Bid-density greedy: eligible requests in descending bid-per-block order
/// (ties: higher priority, then lower index), each admitted whole if it still
/// fits. Winners pay their bid; coefficients are fixed at 1.
AuctionOutcome greedy_allocate(const FrameState& frame,
                               std::span<const VspProfile> profiles);

/// The all-ones scale vector: every bidder keeps its unmodified coefficient.
std::vector<double> unit_policy(std::span<const double> state, int vsp_count);

}  // namespace vsa
