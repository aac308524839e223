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

#include "core/optimizer.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "core/domain.hpp"
#include "core/serialization.hpp"

namespace vsa {
namespace {

std::vector<Mlp::Layer> zeros_like(const Mlp& net) {
  std::vector<Mlp::Layer> out;
  for (const auto& l : net.layers()) {
    out.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                   Eigen::VectorXd::Zero(l.bias.size())});
  }
  return out;
}

}  // namespace

const char* to_string(OptimizerKind kind) {
  return kind == OptimizerKind::kAdam ? "adam" : "sgd";
}

OptimizerKind optimizer_kind_from_string(const std::string& name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw ContractError("unknown optimizer '" + name + "'");
}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate, const Mlp& net)
    : kind_(kind), learning_rate_(learning_rate) {
  if (!(learning_rate > 0)) {
    throw ContractError("Optimizer: learning rate must be > 0");
  }
  if (kind_ == OptimizerKind::kAdam) {
    m_ = zeros_like(net);
    v_ = zeros_like(net);
  }
}

void Optimizer::step(Mlp& net, const Mlp::Gradients& grads) {
  ++steps_;
  if (kind_ == OptimizerKind::kSgd) {
    net.apply_gradients(grads, learning_rate_);
    return;
  }
  auto& layers = net.mutable_layers();
  if (grads.layers.size() != layers.size() || m_.size() != layers.size()) {
    throw ContractError("Optimizer::step: gradient/layer mismatch");
  }
  const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(steps_));
  const double lr = learning_rate_ * std::sqrt(c2) / c1;
  // Epsilon is rescaled so the update equals the textbook form
  // lr * m_hat / (sqrt(v_hat) + eps).
  const double eps = kEpsilon * std::sqrt(c2);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& g = grads.layers[l];
    auto& m = m_[l];
    auto& v = v_[l];
    m.weight = kBeta1 * m.weight + (1 - kBeta1) * g.weight;
    m.bias = kBeta1 * m.bias + (1 - kBeta1) * g.bias;
    v.weight = kBeta2 * v.weight + (1 - kBeta2) * g.weight.cwiseAbs2();
    v.bias = kBeta2 * v.bias + (1 - kBeta2) * g.bias.cwiseAbs2();
    layers[l].weight.array() -=
        lr * m.weight.array() / (v.weight.array().sqrt() + eps);
    layers[l].bias.array() -= lr * m.bias.array() / (v.bias.array().sqrt() + eps);
  }
}

void Optimizer::save(std::ostream& out) const {
  out << "optimizer " << to_string(kind_) << ' ' << steps_ << '\n';
  if (kind_ == OptimizerKind::kAdam) {
    Mlp(m_, OutputActivation::kIdentity, 1.0).save(out);
    Mlp(v_, OutputActivation::kIdentity, 1.0).save(out);
  }
}

Optimizer Optimizer::load(std::istream& in, double learning_rate) {
  expect_token(in, "optimizer");
  std::string name;
  Optimizer opt;
  if (!(in >> name >> opt.steps_) || opt.steps_ < 0) {
    throw ContractError("checkpoint: malformed optimizer state");
  }
  opt.kind_ = optimizer_kind_from_string(name);
  opt.learning_rate_ = learning_rate;
  if (opt.kind_ == OptimizerKind::kAdam) {
    opt.m_ = Mlp::load(in).layers();
    opt.v_ = Mlp::load(in).layers();
  }
  return opt;
}

bool operator==(const Optimizer& a, const Optimizer& b) {
  if (a.kind_ != b.kind_ || a.steps_ != b.steps_ ||
      a.learning_rate_ != b.learning_rate_ || a.m_.size() != b.m_.size()) {
    return false;
  }
  for (std::size_t l = 0; l < a.m_.size(); ++l) {
    if (a.m_[l].weight != b.m_[l].weight || a.m_[l].bias != b.m_[l].bias ||
        a.v_[l].weight != b.v_[l].weight || a.v_[l].bias != b.v_[l].bias) {
      return false;
    }
  }
  return true;
}

}  // namespace vsa
