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

#include <Eigen/Dense>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace vsa {

enum class OutputActivation { kIdentity, kSoftplus, kScaledSigmoid };

std::string to_string(OutputActivation act);
OutputActivation output_activation_from_string(const std::string& name);

/// Fully connected network with rectifier hidden layers.
///
/// Samples are columns: a batch of B inputs is an (input_dim x B) matrix.
class Mlp {
 public:
  struct Layer {
    Eigen::MatrixXd weight;  // out x in
    Eigen::VectorXd bias;    // out
  };

  /// Activations recorded by a forward pass, consumed by backward().
  struct Cache {
    std::vector<Eigen::MatrixXd> inputs;  // input to each layer
    std::vector<Eigen::MatrixXd> pre;     // pre-activation of each layer
  };

  struct Gradients {
    std::vector<Layer> layers;  // empty when parameter gradients were skipped
    Eigen::MatrixXd input;
  };

  Mlp() = default;

  /// `dims` lists every width from input to output. Weights and biases are
  /// drawn uniformly from +-1/sqrt(fan_in).
  Mlp(std::vector<int> dims, OutputActivation output, double output_scale,
      std::mt19937_64& rng);

  /// Builds a network from explicit layers (used by tests and checkpoints).
  Mlp(std::vector<Layer> layers, OutputActivation output, double output_scale);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Cache* cache = nullptr) const;
  std::vector<double> forward(std::span<const double> x) const;

  /// Reverse-mode pass. `upstream` is dL/d(output) with the batch shape of
  /// the cached forward pass; parameter gradients are summed over the batch.
  Gradients backward(const Cache& cache, const Eigen::MatrixXd& upstream,
                     bool parameter_gradients = true) const;

  /// Plain gradient step: theta <- theta - lr * grad.
  void apply_gradients(const Gradients& grads, double lr);

  /// theta <- tau * source + (1 - tau) * theta, elementwise.
  void blend_from(const Mlp& source, double tau);

  int input_dim() const;
  int output_dim() const;
  std::size_t parameter_count() const;
  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& mutable_layers() { return layers_; }
  OutputActivation output_activation() const { return output_; }
  double output_scale() const { return output_scale_; }

  bool all_finite() const;
  bool same_shape(const Mlp& other) const;
  friend bool operator==(const Mlp& a, const Mlp& b);

  /// Exact text serialization: doubles are written as their IEEE-754 bit
  /// patterns so a round trip reproduces every parameter.
  void save(std::ostream& out) const;
  static Mlp load(std::istream& in);

 private:
  std::vector<Layer> layers_;
  OutputActivation output_ = OutputActivation::kIdentity;
  double output_scale_ = 1.0;
};

/// Squared L2 norm over every parameter gradient.
double squared_norm(const Mlp::Gradients& grads);

}  // namespace vsa
