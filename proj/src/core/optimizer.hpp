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

#include <iosfwd>
#include <string>
#include <vector>

#include "core/domain.hpp"
#include "core/mlp.hpp"

namespace vsa {

const char* to_string(OptimizerKind kind);
OptimizerKind optimizer_kind_from_string(const std::string& name);

/// Parameter update rule for one network: plain gradient descent, or Adam
/// with the usual constants (0.9, 0.999, 1e-8) and bias correction.
class Optimizer {
 public:
  Optimizer() = default;
  Optimizer(OptimizerKind kind, double learning_rate, const Mlp& net);

  void step(Mlp& net, const Mlp::Gradients& grads);

  OptimizerKind kind() const { return kind_; }
  long long steps() const { return steps_; }

  /// Moments are written bit-exactly, so a resumed run continues unchanged.
  void save(std::ostream& out) const;
  static Optimizer load(std::istream& in, double learning_rate);

  friend bool operator==(const Optimizer& a, const Optimizer& b);

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  OptimizerKind kind_ = OptimizerKind::kSgd;
  double learning_rate_ = 0.0;
  long long steps_ = 0;
  std::vector<Mlp::Layer> m_;
  std::vector<Mlp::Layer> v_;
};

}  // namespace vsa
