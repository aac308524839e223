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
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "core/domain.hpp"
#include "core/mlp.hpp"
#include "core/optimizer.hpp"
#include "core/replay_buffer.hpp"

namespace vsa {

struct UpdateStats {
  double critic_loss = 0.0;
  double actor_loss = 0.0;
};

/// Deterministic-policy actor-critic with target networks.
///
/// The actor maps a state to one non-negative coefficient scale per bidder;
/// the critic scores the concatenation [state; action]. All randomness
/// (initialization, exploration noise, minibatch sampling) comes from one
/// generator owned by the agent and saved with its checkpoint.
class DdpgAgent {
 public:
  DdpgAgent(int state_dim, int action_dim, DdpgConfig config,
            std::uint64_t seed);

  /// pi(s); with `explore`, adds N(0, noise_std) per entry. The result is
  /// clamped to [0, max_coefficient] either way.
  std::vector<double> act(std::span<const double> state, bool explore);

  /// One linear decay step of the exploration std, floored at noise_min.
  void decay_noise();

  void remember(Transition t) { buffer_.push(std::move(t)); }

  /// Samples a minibatch and performs critic, actor and target updates.
  /// Returns nullopt (and changes nothing) while the buffer holds fewer
  /// transitions than one batch.
  std::optional<UpdateStats> update();

  /// One gradient step on the mean squared TD error; returns that loss.
  double critic_update(std::span<const Transition* const> batch);

  /// One gradient step on -mean Q(s, pi(s)); returns that loss.
  double actor_update(std::span<const Transition* const> batch);

  /// Polyak blend of both target networks toward the live networks.
  void soft_update();

  const Mlp& actor() const { return actor_; }
  const Mlp& critic() const { return critic_; }
  const Mlp& target_actor() const { return target_actor_; }
  const Mlp& target_critic() const { return target_critic_; }
  Mlp& mutable_actor() { return actor_; }
  Mlp& mutable_critic() { return critic_; }
  Mlp& mutable_target_actor() { return target_actor_; }
  Mlp& mutable_target_critic() { return target_critic_; }

  const Optimizer& actor_optimizer() const { return actor_opt_; }
  const Optimizer& critic_optimizer() const { return critic_opt_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  const DdpgConfig& config() const { return config_; }
  double noise_std() const { return noise_std_; }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  bool parameters_finite() const;

  void save(std::ostream& out) const;
  static DdpgAgent load(std::istream& in);

 private:
  DdpgAgent(int state_dim, int action_dim, DdpgConfig config);

  Eigen::MatrixXd stack_states(std::span<const Transition* const> batch,
                               bool next) const;
  Eigen::MatrixXd stack_actions(std::span<const Transition* const> batch) const;
  void clip(Mlp::Gradients& grads) const;

  int state_dim_;
  int action_dim_;
  DdpgConfig config_;
  std::mt19937_64 rng_;
  Mlp actor_;
  Mlp critic_;
  Mlp target_actor_;
  Mlp target_critic_;
  Optimizer actor_opt_;
  Optimizer critic_opt_;
  ReplayBuffer buffer_;
  double noise_std_;
};

}  // namespace vsa
