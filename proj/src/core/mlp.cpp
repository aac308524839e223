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

#include "core/mlp.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "core/domain.hpp"
#include "core/serialization.hpp"

namespace vsa {
namespace {

double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

std::string to_string(OutputActivation act) {
  switch (act) {
    case OutputActivation::kIdentity:
      return "identity";
    case OutputActivation::kSoftplus:
      return "softplus";
    case OutputActivation::kScaledSigmoid:
      return "scaled-sigmoid";
  }
  return "identity";
}

OutputActivation output_activation_from_string(const std::string& name) {
  if (name == "identity") return OutputActivation::kIdentity;
  if (name == "softplus") return OutputActivation::kSoftplus;
  if (name == "scaled-sigmoid") return OutputActivation::kScaledSigmoid;
  throw ContractError("unknown output activation '" + name + "'");
}

Mlp::Mlp(std::vector<int> dims, OutputActivation output, double output_scale,
         std::mt19937_64& rng)
    : output_(output), output_scale_(output_scale) {
  if (dims.size() < 2) throw ContractError("Mlp: need at least two widths");
  for (int d : dims) {
    if (d <= 0) throw ContractError("Mlp: widths must be positive");
  }
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(dims[l]));
    std::uniform_real_distribution<double> init(-bound, bound);
    Layer layer{Eigen::MatrixXd(dims[l + 1], dims[l]),
                Eigen::VectorXd(dims[l + 1])};
    // Row-major draw order so initialization does not depend on storage.
    for (int r = 0; r < dims[l + 1]; ++r) {
      for (int c = 0; c < dims[l]; ++c) layer.weight(r, c) = init(rng);
    }
    for (int r = 0; r < dims[l + 1]; ++r) layer.bias(r) = init(rng);
    layers_.push_back(std::move(layer));
  }
}

Mlp::Mlp(std::vector<Layer> layers, OutputActivation output,
         double output_scale)
    : layers_(std::move(layers)), output_(output), output_scale_(output_scale) {
  if (layers_.empty()) throw ContractError("Mlp: no layers");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (layers_[l].bias.size() != layers_[l].weight.rows()) {
      throw ContractError("Mlp: bias length must equal weight rows");
    }
    if (l > 0 && layers_[l].weight.cols() != layers_[l - 1].weight.rows()) {
      throw ContractError("Mlp: layer dimensions do not chain");
    }
  }
}

int Mlp::input_dim() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.front().weight.cols());
}

int Mlp::output_dim() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.back().weight.rows());
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weight.size() + l.bias.size();
  return n;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, Cache* cache) const {
  if (x.rows() != input_dim()) {
    throw ContractError("Mlp::forward: input dimension mismatch");
  }
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
  }
  Eigen::MatrixXd a = x;
  const std::size_t last = layers_.size() - 1;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weight * a;
    z.colwise() += layers_[l].bias;
    if (cache) {
      cache->inputs.push_back(std::move(a));
      cache->pre.push_back(z);
    }
    if (l < last) {
      a = z.cwiseMax(0.0);
      continue;
    }
    switch (output_) {
      case OutputActivation::kIdentity:
        a = std::move(z);
        break;
      case OutputActivation::kSoftplus:
        a = output_scale_ * z.unaryExpr([](double v) { return softplus(v); });
        break;
      case OutputActivation::kScaledSigmoid:
        a = output_scale_ * z.unaryExpr([](double v) { return sigmoid(v); });
        break;
    }
  }
  return a;
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  const Eigen::Map<const Eigen::VectorXd> in(x.data(),
                                             static_cast<Eigen::Index>(x.size()));
  const Eigen::MatrixXd out = forward(Eigen::MatrixXd(in));
  return std::vector<double>(out.data(), out.data() + out.size());
}

Mlp::Gradients Mlp::backward(const Cache& cache,
                             const Eigen::MatrixXd& upstream,
                             bool parameter_gradients) const {
  if (cache.pre.size() != layers_.size()) {
    throw ContractError("Mlp::backward: cache does not match network");
  }
  const Eigen::MatrixXd& z_out = cache.pre.back();
  if (upstream.rows() != z_out.rows() || upstream.cols() != z_out.cols()) {
    throw ContractError("Mlp::backward: upstream shape mismatch");
  }
  Eigen::MatrixXd delta;
  switch (output_) {
    case OutputActivation::kIdentity:
      delta = upstream;
      break;
    case OutputActivation::kSoftplus:
      delta = upstream.cwiseProduct(
          output_scale_ * z_out.unaryExpr([](double v) { return sigmoid(v); }));
      break;
    case OutputActivation::kScaledSigmoid:
      delta = upstream.cwiseProduct(z_out.unaryExpr([this](double v) {
        const double s = sigmoid(v);
        return output_scale_ * s * (1.0 - s);
      }));
      break;
  }

  Gradients grads;
  if (parameter_gradients) grads.layers.resize(layers_.size());
  for (std::size_t l = layers_.size(); l-- > 0;) {
    if (parameter_gradients) {
      grads.layers[l].weight.noalias() = delta * cache.inputs[l].transpose();
      grads.layers[l].bias = delta.rowwise().sum();
    }
    Eigen::MatrixXd upstream_a = layers_[l].weight.transpose() * delta;
    if (l == 0) {
      grads.input = std::move(upstream_a);
      break;
    }
    delta = upstream_a.cwiseProduct(
        (cache.pre[l - 1].array() > 0.0).cast<double>().matrix());
  }
  return grads;
}

void Mlp::apply_gradients(const Gradients& grads, double lr) {
  if (grads.layers.size() != layers_.size()) {
    throw ContractError("Mlp::apply_gradients: gradient/layer mismatch");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    layers_[l].weight.noalias() -= lr * grads.layers[l].weight;
    layers_[l].bias.noalias() -= lr * grads.layers[l].bias;
  }
}

void Mlp::blend_from(const Mlp& source, double tau) {
  if (!same_shape(source)) {
    throw ContractError("Mlp::blend_from: shape mismatch");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    layers_[l].weight =
        tau * source.layers_[l].weight + (1.0 - tau) * layers_[l].weight;
    layers_[l].bias =
        tau * source.layers_[l].bias + (1.0 - tau) * layers_[l].bias;
  }
}

bool Mlp::all_finite() const {
  for (const auto& l : layers_) {
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  }
  return true;
}

bool Mlp::same_shape(const Mlp& other) const {
  if (layers_.size() != other.layers_.size()) return false;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (layers_[l].weight.rows() != other.layers_[l].weight.rows() ||
        layers_[l].weight.cols() != other.layers_[l].weight.cols()) {
      return false;
    }
  }
  return true;
}

bool operator==(const Mlp& a, const Mlp& b) {
  if (!a.same_shape(b) || a.output_ != b.output_ ||
      a.output_scale_ != b.output_scale_) {
    return false;
  }
  for (std::size_t l = 0; l < a.layers_.size(); ++l) {
    if (a.layers_[l].weight != b.layers_[l].weight ||
        a.layers_[l].bias != b.layers_[l].bias) {
      return false;
    }
  }
  return true;
}

void Mlp::save(std::ostream& out) const {
  out << "mlp " << layers_.size() << ' ' << to_string(output_) << ' '
      << encode_double(output_scale_) << '\n';
  for (const auto& l : layers_) {
    out << "layer " << l.weight.rows() << ' ' << l.weight.cols() << '\n';
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) {
        out << encode_double(l.weight(r, c))
            << (c + 1 == l.weight.cols() ? '\n' : ' ');
      }
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) {
      out << encode_double(l.bias(r)) << (r + 1 == l.bias.size() ? '\n' : ' ');
    }
  }
}

Mlp Mlp::load(std::istream& in) {
  expect_token(in, "mlp");
  std::size_t count = 0;
  std::string act;
  std::string scale;
  if (!(in >> count >> act >> scale) || count == 0) {
    throw ContractError("checkpoint: malformed mlp header");
  }
  std::vector<Layer> layers;
  for (std::size_t i = 0; i < count; ++i) {
    expect_token(in, "layer");
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (!(in >> rows >> cols) || rows <= 0 || cols <= 0) {
      throw ContractError("checkpoint: malformed layer header");
    }
    Layer layer{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) layer.weight(r, c) = read_double(in);
    }
    for (Eigen::Index r = 0; r < rows; ++r) layer.bias(r) = read_double(in);
    layers.push_back(std::move(layer));
  }
  return Mlp(std::move(layers), output_activation_from_string(act),
             decode_double(scale));
}

double squared_norm(const Mlp::Gradients& grads) {
  double total = 0.0;
  for (const auto& l : grads.layers) {
    total += l.weight.squaredNorm() + l.bias.squaredNorm();
  }
  return total;
}

}  // namespace vsa
