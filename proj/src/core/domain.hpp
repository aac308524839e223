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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsa {

/// Raised when a caller violates a precondition (wrong lengths, bad config).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a quantity is mathematically undefined for the given input.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Static identity of a bidding vertical sector player.
///
/// Rates are carried in bits/s. `qci_priority` follows the 5QI convention:
/// 1 is the most important class.
class VspProfile {
 public:
  VspProfile(int id, int qci_priority, double min_rate, double max_rate,
             double truthfulness_mean, double truthfulness_spread,
             double participation_prob);

  int id() const { return id_; }
  int qci_priority() const { return qci_priority_; }
  double min_rate() const { return min_rate_; }
  double max_rate() const { return max_rate_; }
  double truthfulness_mean() const { return truthfulness_mean_; }
  double truthfulness_spread() const { return truthfulness_spread_; }
  double participation_prob() const { return participation_prob_; }

  /// 1/q, the weight a coefficient gives to the QoS class.
  double priority_weight() const { return 1.0 / qci_priority_; }

 private:
  int id_;
  int qci_priority_;
  double min_rate_;
  double max_rate_;
  double truthfulness_mean_;
  double truthfulness_spread_;
  double participation_prob_;
};

/// One bidder's request for a frame: (bid, value, demand, obtainable rate).
///
/// A bidder that sits out the frame is encoded as an all-zero request so that
/// request vectors keep a fixed length.
class Request {
 public:
  static Request absent(int vsp_id);
  static Request make(int vsp_id, double bid, double value, int demand,
                      double rate);

  int vsp_id() const { return vsp_id_; }
  double bid() const { return bid_; }
  double value() const { return value_; }
  int demand() const { return demand_; }
  double rate() const { return rate_; }
  bool participating() const { return participating_; }

 private:
  Request(int vsp_id, double bid, double value, int demand, double rate,
          bool participating)
      : vsp_id_(vsp_id), bid_(bid), value_(value), demand_(demand),
        rate_(rate), participating_(participating) {}

  int vsp_id_;
  double bid_;
  double value_;
  int demand_;
  double rate_;
  bool participating_;
};

/// Everything the auctioneer sees at the start of a frame.
class FrameState {
 public:
  FrameState(int frame_index, double available_bandwidth,
             double block_bandwidth, double total_bandwidth,
             std::vector<Request> requests);

  int frame_index() const { return frame_index_; }
  double available_bandwidth() const { return available_bandwidth_; }
  double block_bandwidth() const { return block_bandwidth_; }
  double total_bandwidth() const { return total_bandwidth_; }
  int block_count() const { return block_count_; }
  const std::vector<Request>& requests() const { return requests_; }

 private:
  int frame_index_;
  double available_bandwidth_;
  double block_bandwidth_;
  double total_bandwidth_;
  int block_count_;
  std::vector<Request> requests_;
};

/// floor(bandwidth / block_bandwidth); the number of whole blocks on offer.
int block_count(double bandwidth, double block_bandwidth);

/// Result of clearing one frame, whether by auction or direct assignment.
struct AuctionOutcome {
  std::vector<int> winners;  // x_i in {0,1}
  std::vector<double> coefficients;
  std::vector<double> weighted_bids;
  std::vector<double> payments;  // weighted-bid units
  std::vector<int> blocks_allocated;
  int total_blocks_used = 0;
  bool triggered = false;

  /// Throws ContractError unless the outcome is consistent with `frame`.
  void validate(const FrameState& frame) const;

  std::size_t size() const { return winners.size(); }
};

enum class OptimizerKind { kSgd, kAdam };

struct DdpgConfig {
  int buffer_capacity = 10000;
  int batch_size = 64;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  double polyak = 5e-4;
  double discount = 0.99;
  std::vector<int> actor_hidden{1024, 512};
  std::vector<int> critic_hidden{512, 256};
  double exploration_noise_std = 1.0;
  double noise_decay = 5e-4;
  double noise_min = 0.01;
  double max_coefficient = 5.0;
  OptimizerKind optimizer = OptimizerKind::kSgd;
  double reward_scale = 0.01;
  double reward_shift = 0.0;  // critic target uses scale * (r - shift)
  // When set, shift and scale are replaced by the replay buffer's reward
  // mean and standard deviation before reward_scale is applied.
  bool normalize_rewards = false;
  // Decay the exploration std once per episode instead of once per frame.
  bool decay_per_episode = false;
  double grad_clip = 0.0;  // 0 disables global-norm clipping
  int episodes = 500;
  int frames_per_episode = 250;

  void validate() const;
};

struct Transition {
  std::vector<double> state;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_state;
};

/// Bid-to-value ratio; 0 for a bidder that does not participate.
double truthfulness(double bid, double value);

/// The five reference profiles (two priority-1 classes, one each of 2, 3, 4).
std::vector<VspProfile> default_profiles();

/// `count` profiles built by cycling through default_profiles().
std::vector<VspProfile> replicated_profiles(int count);

}  // namespace vsa
