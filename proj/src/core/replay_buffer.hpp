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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "core/domain.hpp"

namespace vsa {

/// Fixed-capacity ring of transitions; the oldest entry is overwritten first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw ContractError("ReplayBuffer: capacity must be > 0");
    storage_.reserve(capacity);
  }

  void push(Transition t) {
    reward_sum_ += t.reward;
    reward_sq_sum_ += t.reward * t.reward;
    if (storage_.size() < capacity_) {
      storage_.push_back(std::move(t));
    } else {
      const double old = storage_[cursor_].reward;
      reward_sum_ -= old;
      reward_sq_sum_ -= old * old;
      storage_[cursor_] = std::move(t);
    }
    cursor_ = (cursor_ + 1) % capacity_;
    // Running sums drift under repeated add/subtract; rebuild once per lap.
    if (cursor_ == 0) recount();
  }

  /// Mean and population standard deviation of the stored rewards.
  double reward_mean() const {
    return storage_.empty() ? 0.0 : reward_sum_ / storage_.size();
  }
  double reward_std() const {
    if (storage_.empty()) return 0.0;
    const double m = reward_mean();
    return std::sqrt(std::max(reward_sq_sum_ / storage_.size() - m * m, 0.0));
  }

  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return storage_.empty(); }

  /// i-th oldest retained transition.
  const Transition& oldest(std::size_t i) const {
    if (i >= storage_.size()) throw ContractError("ReplayBuffer: index out of range");
    const std::size_t start = storage_.size() < capacity_ ? 0 : cursor_;
    return storage_[(start + i) % capacity_];
  }

  /// Uniform sample with replacement of `count` slot indices.
  std::vector<std::size_t> sample_indices(std::size_t count,
                                          std::mt19937_64& rng) const {
    if (storage_.empty()) throw ContractError("ReplayBuffer: empty");
    std::uniform_int_distribution<std::size_t> pick(0, storage_.size() - 1);
    std::vector<std::size_t> out(count);
    for (auto& i : out) i = pick(rng);
    return out;
  }

  const Transition& slot(std::size_t i) const { return storage_.at(i); }

 private:
  void recount() {
    reward_sum_ = 0.0;
    reward_sq_sum_ = 0.0;
    for (const auto& t : storage_) {
      reward_sum_ += t.reward;
      reward_sq_sum_ += t.reward * t.reward;
    }
  }

  std::size_t capacity_;
  std::size_t cursor_ = 0;
  std::vector<Transition> storage_;
  double reward_sum_ = 0.0;
  double reward_sq_sum_ = 0.0;
};

}  // namespace vsa
