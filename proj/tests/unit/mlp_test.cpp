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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace vsa {
namespace {

// Scalar loss L = sum(upstream .* net(x)) so dL/dtheta is what backward()
// returns for that upstream.
double probe_loss(const Mlp& net, const Eigen::MatrixXd& x,
                  const Eigen::MatrixXd& upstream) {
  return net.forward(x).cwiseProduct(upstream).sum();
}

double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-6});
  return std::abs(a - b) / scale;
}

Mlp random_net(std::mt19937_64& rng, OutputActivation act) {
  std::uniform_int_distribution<int> depth(1, 3);
  std::uniform_int_distribution<int> width(1, 16);
  std::vector<int> dims{width(rng)};
  const int layers = depth(rng);
  for (int l = 0; l < layers; ++l) dims.push_back(width(rng));
  return Mlp(dims, act, 1.5, rng);
}

// Checks every parameter and input gradient against central differences.
double worst_gradient_error(Mlp net, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int batch = 3;
  Eigen::MatrixXd x(net.input_dim(), batch);
  Eigen::MatrixXd up(net.output_dim(), batch);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  for (Eigen::Index i = 0; i < up.size(); ++i) up.data()[i] = normal(rng);

  Mlp::Cache cache;
  net.forward(x, &cache);
  const auto grads = net.backward(cache, up);
  constexpr double kStep = 1e-5;
  double worst = 0.0;
  auto check = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + kStep;
    const double plus = probe_loss(net, x, up);
    param = saved - kStep;
    const double minus = probe_loss(net, x, up);
    param = saved;
    const double numeric = (plus - minus) / (2 * kStep);
    // Kinks of the rectifier make the central difference meaningless when a
    // pre-activation sits within one step of zero; such draws are skipped.
    if (std::abs(numeric - analytic) > 1e-4 * std::max(1.0, std::abs(numeric))) {
      Mlp::Cache c2;
      net.forward(x, &c2);
      for (const auto& z : c2.pre) {
        if ((z.array().abs() < 10 * kStep).any()) return;
      }
    }
    worst = std::max(worst, std::abs(numeric - analytic) <= 1e-9
                                ? 0.0
                                : relative_error(numeric, analytic));
  };
  auto& layers = net.mutable_layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (Eigen::Index i = 0; i < layers[l].weight.size(); ++i) {
      check(layers[l].weight.data()[i], grads.layers[l].weight.data()[i]);
    }
    for (Eigen::Index i = 0; i < layers[l].bias.size(); ++i) {
      check(layers[l].bias.data()[i], grads.layers[l].bias.data()[i]);
    }
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    check(x.data()[i], grads.input.data()[i]);
  }
  return worst;
}

TEST(Mlp, ZeroNetworkGivesZeroOutput) {
  Mlp::Layer layer{Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(2)};
  Mlp net({layer}, OutputActivation::kIdentity, 1.0);
  const std::vector<double> in{1.0, -2.0, 3.0};
  EXPECT_EQ(net.forward(in), (std::vector<double>{0.0, 0.0}));
}

TEST(Mlp, SingleAffineUnit) {
  Mlp::Layer layer{Eigen::MatrixXd::Constant(1, 1, 2.0),
                   Eigen::VectorXd::Constant(1, 1.0)};
  Mlp net({layer}, OutputActivation::kIdentity, 1.0);
  const std::vector<double> in{3.0};
  EXPECT_EQ(net.forward(in), std::vector<double>{7.0});
}

TEST(Mlp, SoftplusOutputIsPositive) {
  std::mt19937_64 rng(3);
  Mlp net({4, 8, 3}, OutputActivation::kSoftplus, 1.0, rng);
  for (double scale : {-100.0, -1.0, 0.0, 1.0, 100.0}) {
    const std::vector<double> in(4, scale);
    for (double y : net.forward(in)) EXPECT_GT(y, 0.0);
  }
}

TEST(Mlp, ZeroUpstreamGivesZeroGradients) {
  std::mt19937_64 rng(5);
  Mlp net({3, 5, 2}, OutputActivation::kSoftplus, 1.0, rng);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(3, 4);
  Mlp::Cache cache;
  net.forward(x, &cache);
  const auto g = net.backward(cache, Eigen::MatrixXd::Zero(2, 4));
  EXPECT_EQ(squared_norm(g), 0.0);
  EXPECT_EQ(g.input.squaredNorm(), 0.0);
}

TEST(Mlp, LinearWeightGradientIsOuterProduct) {
  Mlp::Layer layer{Eigen::MatrixXd::Constant(2, 3, 0.5),
                   Eigen::VectorXd::Zero(2)};
  Mlp net({layer}, OutputActivation::kIdentity, 1.0);
  Eigen::MatrixXd x(3, 1);
  x << 1.0, 2.0, 3.0;
  Eigen::MatrixXd up(2, 1);
  up << 1.0, -2.0;
  Mlp::Cache cache;
  net.forward(x, &cache);
  const auto g = net.backward(cache, up);
  EXPECT_TRUE(g.layers[0].weight.isApprox(up * x.transpose()));
  EXPECT_TRUE(g.layers[0].bias.isApprox(up.col(0)));
}

TEST(Mlp, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (auto act : {OutputActivation::kIdentity, OutputActivation::kSoftplus,
                   OutputActivation::kScaledSigmoid}) {
    for (int trial = 0; trial < 20; ++trial) {
      EXPECT_LE(worst_gradient_error(random_net(rng, act), rng), 1e-4)
          << to_string(act) << " trial " << trial;
    }
  }
}

TEST(Mlp, BlendIsPolyakAverage) {
  Mlp::Layer one{Eigen::MatrixXd::Constant(1, 1, 1.0),
                 Eigen::VectorXd::Constant(1, 1.0)};
  Mlp::Layer zero{Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Zero(1)};
  Mlp source({one}, OutputActivation::kIdentity, 1.0);
  Mlp target({zero}, OutputActivation::kIdentity, 1.0);
  target.blend_from(source, 0.0005);
  EXPECT_DOUBLE_EQ(target.layers()[0].weight(0, 0), 0.0005);
  Mlp same = source;
  same.blend_from(source, 0.3);
  EXPECT_EQ(same, source);
}

TEST(Mlp, SaveLoadIsBitExact) {
  std::mt19937_64 rng(9);
  Mlp net({4, 7, 2}, OutputActivation::kScaledSigmoid, 2.5, rng);
  std::stringstream buf;
  net.save(buf);
  const Mlp back = Mlp::load(buf);
  EXPECT_EQ(back, net);
}

TEST(Mlp, RejectsBadShapes) {
  std::mt19937_64 rng(1);
  Mlp net({3, 2}, OutputActivation::kIdentity, 1.0, rng);
  const std::vector<double> wrong(4, 0.0);
  EXPECT_THROW(net.forward(wrong), std::invalid_argument);
  Mlp::Layer a{Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(2)};
  Mlp::Layer b{Eigen::MatrixXd::Zero(1, 4), Eigen::VectorXd::Zero(1)};
  EXPECT_THROW(Mlp({a, b}, OutputActivation::kIdentity, 1.0),
               std::invalid_argument);
}

}  // namespace
}  // namespace vsa
