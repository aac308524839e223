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

#include "core/ddpg.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "core/serialization.hpp"

namespace vsa {
namespace {

constexpr const char* kCheckpointMagic = "vsa-ddpg-checkpoint";
constexpr int kCheckpointVersion = 1;

std::vector<int> widths(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> dims{in};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(out);
  return dims;
}

void write_ints(std::ostream& out, const std::vector<int>& v) {
  out << v.size();
  for (int x : v) out << ' ' << x;
}

std::vector<int> read_ints(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n)) throw ContractError("checkpoint: bad integer list");
  std::vector<int> v(n);
  for (auto& x : v) {
    if (!(in >> x)) throw ContractError("checkpoint: bad integer list");
  }
  return v;
}

}  // namespace

DdpgAgent::DdpgAgent(int state_dim, int action_dim, DdpgConfig config)
    : state_dim_(state_dim),
      action_dim_(action_dim),
      config_((config.validate(), std::move(config))),
      buffer_(static_cast<std::size_t>(config_.buffer_capacity)),
      noise_std_(config_.exploration_noise_std) {
  if (state_dim <= 0 || action_dim <= 0) {
    throw ContractError("DdpgAgent: dimensions must be positive");
  }
}

DdpgAgent::DdpgAgent(int state_dim, int action_dim, DdpgConfig config,
                     std::uint64_t seed)
    : DdpgAgent(state_dim, action_dim, std::move(config)) {
  rng_.seed(seed);
  actor_ = Mlp(widths(state_dim, config_.actor_hidden, action_dim),
               OutputActivation::kScaledSigmoid, config_.max_coefficient, rng_);
  critic_ = Mlp(widths(state_dim + action_dim, config_.critic_hidden, 1),
                OutputActivation::kIdentity, 1.0, rng_);
  target_actor_ = actor_;
  target_critic_ = critic_;
  actor_opt_ = Optimizer(config_.optimizer, config_.actor_lr, actor_);
  critic_opt_ = Optimizer(config_.optimizer, config_.critic_lr, critic_);
}

std::vector<double> DdpgAgent::act(std::span<const double> state,
                                   bool explore) {
  if (static_cast<int>(state.size()) != state_dim_) {
    throw ContractError("DdpgAgent::act: state dimension mismatch");
  }
  std::vector<double> action = actor_.forward(state);
  if (explore && noise_std_ > 0) {
    std::normal_distribution<double> noise(0.0, noise_std_);
    for (double& a : action) a += noise(rng_);
  }
  for (double& a : action) a = std::clamp(a, 0.0, config_.max_coefficient);
  return action;
}

void DdpgAgent::decay_noise() {
  noise_std_ = std::max(noise_std_ - config_.noise_decay, config_.noise_min);
}

std::optional<UpdateStats> DdpgAgent::update() {
  const auto batch_size = static_cast<std::size_t>(config_.batch_size);
  if (buffer_.size() < batch_size) return std::nullopt;
  const auto picks = buffer_.sample_indices(batch_size, rng_);
  std::vector<const Transition*> batch;
  batch.reserve(picks.size());
  for (std::size_t i : picks) batch.push_back(&buffer_.slot(i));
  UpdateStats stats;
  stats.critic_loss = critic_update(batch);
  stats.actor_loss = actor_update(batch);
  soft_update();
  return stats;
}

Eigen::MatrixXd DdpgAgent::stack_states(
    std::span<const Transition* const> batch, bool next) const {
  Eigen::MatrixXd m(state_dim_, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto& s = next ? batch[j]->next_state : batch[j]->state;
    if (static_cast<int>(s.size()) != state_dim_) {
      throw ContractError("DdpgAgent: transition state dimension mismatch");
    }
    for (int r = 0; r < state_dim_; ++r) m(r, j) = s[r];
  }
  return m;
}

Eigen::MatrixXd DdpgAgent::stack_actions(
    std::span<const Transition* const> batch) const {
  Eigen::MatrixXd m(action_dim_, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto& a = batch[j]->action;
    if (static_cast<int>(a.size()) != action_dim_) {
      throw ContractError("DdpgAgent: transition action dimension mismatch");
    }
    for (int r = 0; r < action_dim_; ++r) m(r, j) = a[r];
  }
  return m;
}

void DdpgAgent::clip(Mlp::Gradients& grads) const {
  if (config_.grad_clip <= 0) return;
  const double norm = std::sqrt(squared_norm(grads));
  if (norm <= config_.grad_clip) return;
  const double k = config_.grad_clip / norm;
  for (auto& l : grads.layers) {
    l.weight *= k;
    l.bias *= k;
  }
}

double DdpgAgent::critic_update(std::span<const Transition* const> batch) {
  if (batch.empty()) throw ContractError("critic_update: empty batch");
  const auto b = static_cast<Eigen::Index>(batch.size());

  // TD targets come from the target networks and carry no gradient.
  const Eigen::MatrixXd next_states = stack_states(batch, true);
  Eigen::MatrixXd next_input(state_dim_ + action_dim_, b);
  next_input.topRows(state_dim_) = next_states;
  next_input.bottomRows(action_dim_) = target_actor_.forward(next_states);
  const Eigen::MatrixXd next_q = target_critic_.forward(next_input);

  Eigen::MatrixXd input(state_dim_ + action_dim_, b);
  input.topRows(state_dim_) = stack_states(batch, false);
  input.bottomRows(action_dim_) = stack_actions(batch);
  Mlp::Cache cache;
  const Eigen::MatrixXd q = critic_.forward(input, &cache);

  double shift = config_.reward_shift;
  double scale = config_.reward_scale;
  if (config_.normalize_rewards && !buffer_.empty()) {
    shift = buffer_.reward_mean();
    scale /= std::max(buffer_.reward_std(), 1e-8);
  }
  Eigen::MatrixXd diff(1, b);
  for (Eigen::Index j = 0; j < b; ++j) {
    const double target = scale * (batch[j]->reward - shift) +
                          config_.discount * next_q(0, j);
    diff(0, j) = q(0, j) - target;
  }
  const double loss = diff.squaredNorm() / static_cast<double>(b);
  auto grads = critic_.backward(cache, (2.0 / static_cast<double>(b)) * diff);
  clip(grads);
  critic_opt_.step(critic_, grads);
  return loss;
}

double DdpgAgent::actor_update(std::span<const Transition* const> batch) {
  if (batch.empty()) throw ContractError("actor_update: empty batch");
  const auto b = static_cast<Eigen::Index>(batch.size());
  const Eigen::MatrixXd states = stack_states(batch, false);

  Mlp::Cache actor_cache;
  const Eigen::MatrixXd actions = actor_.forward(states, &actor_cache);
  Eigen::MatrixXd input(state_dim_ + action_dim_, b);
  input.topRows(state_dim_) = states;
  input.bottomRows(action_dim_) = actions;
  Mlp::Cache critic_cache;
  const Eigen::MatrixXd q = critic_.forward(input, &critic_cache);
  const double loss = -q.sum() / static_cast<double>(b);

  // Critic weights stay fixed; only d(-mean Q)/d(action) is needed from it.
  const Eigen::MatrixXd upstream =
      Eigen::MatrixXd::Constant(1, b, -1.0 / static_cast<double>(b));
  const auto critic_grads = critic_.backward(critic_cache, upstream, false);
  const Eigen::MatrixXd action_grad =
      critic_grads.input.bottomRows(action_dim_);
  auto grads = actor_.backward(actor_cache, action_grad);
  clip(grads);
  actor_opt_.step(actor_, grads);
  return loss;
}

void DdpgAgent::soft_update() {
  target_actor_.blend_from(actor_, config_.polyak);
  target_critic_.blend_from(critic_, config_.polyak);
}

bool DdpgAgent::parameters_finite() const {
  return actor_.all_finite() && critic_.all_finite() &&
         target_actor_.all_finite() && target_critic_.all_finite();
}

void DdpgAgent::save(std::ostream& out) const {
  out << kCheckpointMagic << ' ' << kCheckpointVersion << '\n';
  out << "dims " << state_dim_ << ' ' << action_dim_ << '\n';
  out << "config " << to_string(config_.optimizer) << ' '
      << config_.buffer_capacity << ' ' << config_.batch_size
      << ' ' << encode_double(config_.actor_lr) << ' '
      << encode_double(config_.critic_lr) << ' '
      << encode_double(config_.polyak) << ' '
      << encode_double(config_.discount) << ' '
      << encode_double(config_.exploration_noise_std) << ' '
      << encode_double(config_.noise_decay) << ' '
      << encode_double(config_.noise_min) << ' '
      << encode_double(config_.max_coefficient) << ' '
      << encode_double(config_.reward_scale) << ' '
      << encode_double(config_.reward_shift) << ' '
      << encode_double(config_.grad_clip) << ' ' << config_.normalize_rewards
      << ' ' << config_.decay_per_episode << ' ' << config_.episodes << ' '
      << config_.frames_per_episode << '\n';
  out << "actor_hidden ";
  write_ints(out, config_.actor_hidden);
  out << "\ncritic_hidden ";
  write_ints(out, config_.critic_hidden);
  out << "\nnoise_std " << encode_double(noise_std_) << '\n';
  actor_.save(out);
  critic_.save(out);
  target_actor_.save(out);
  target_critic_.save(out);
  actor_opt_.save(out);
  critic_opt_.save(out);
  out << "rng " << rng_ << '\n';
  out << "end\n";
}

DdpgAgent DdpgAgent::load(std::istream& in) {
  expect_token(in, kCheckpointMagic);
  int version = 0;
  if (!(in >> version) || version != kCheckpointVersion) {
    throw ContractError("checkpoint: unsupported version");
  }
  expect_token(in, "dims");
  int state_dim = 0;
  int action_dim = 0;
  if (!(in >> state_dim >> action_dim)) {
    throw ContractError("checkpoint: malformed dims");
  }
  expect_token(in, "config");
  DdpgConfig cfg;
  std::string optimizer;
  if (!(in >> optimizer)) throw ContractError("checkpoint: malformed config");
  cfg.optimizer = optimizer_kind_from_string(optimizer);
  if (!(in >> cfg.buffer_capacity >> cfg.batch_size)) {
    throw ContractError("checkpoint: malformed config");
  }
  cfg.actor_lr = read_double(in);
  cfg.critic_lr = read_double(in);
  cfg.polyak = read_double(in);
  cfg.discount = read_double(in);
  cfg.exploration_noise_std = read_double(in);
  cfg.noise_decay = read_double(in);
  cfg.noise_min = read_double(in);
  cfg.max_coefficient = read_double(in);
  cfg.reward_scale = read_double(in);
  cfg.reward_shift = read_double(in);
  cfg.grad_clip = read_double(in);
  if (!(in >> cfg.normalize_rewards >> cfg.decay_per_episode >> cfg.episodes >>
        cfg.frames_per_episode)) {
    throw ContractError("checkpoint: malformed config");
  }
  expect_token(in, "actor_hidden");
  cfg.actor_hidden = read_ints(in);
  expect_token(in, "critic_hidden");
  cfg.critic_hidden = read_ints(in);

  DdpgAgent agent(state_dim, action_dim, std::move(cfg));
  expect_token(in, "noise_std");
  agent.noise_std_ = read_double(in);
  agent.actor_ = Mlp::load(in);
  agent.critic_ = Mlp::load(in);
  agent.target_actor_ = Mlp::load(in);
  agent.target_critic_ = Mlp::load(in);
  if (agent.actor_.input_dim() != state_dim ||
      agent.actor_.output_dim() != action_dim ||
      agent.critic_.input_dim() != state_dim + action_dim ||
      !agent.target_actor_.same_shape(agent.actor_) ||
      !agent.target_critic_.same_shape(agent.critic_)) {
    throw ContractError("checkpoint: network shapes inconsistent");
  }
  agent.actor_opt_ = Optimizer::load(in, agent.config_.actor_lr);
  agent.critic_opt_ = Optimizer::load(in, agent.config_.critic_lr);
  if (agent.actor_opt_.kind() != agent.config_.optimizer ||
      agent.critic_opt_.kind() != agent.config_.optimizer) {
    throw ContractError("checkpoint: optimizer state does not match config");
  }
  expect_token(in, "rng");
  if (!(in >> agent.rng_)) throw ContractError("checkpoint: bad rng state");
  expect_token(in, "end");
  return agent;
}

}  // namespace vsa
