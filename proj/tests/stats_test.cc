// Copyright 2026 The agots Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "agots/stats.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "agots/rng.h"

namespace agots {
namespace {

TEST(StatsTest, NormalCdfAndQuantileAreInverse) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
  for (double p : {0.001, 0.1, 0.5, 0.8, 0.999}) {
    EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-14);
  }
}

TEST(StatsTest, KsCriticalValue) {
  EXPECT_NEAR(ks_critical_value(100000, 0.01) * std::sqrt(100000.0), 1.6276, 1e-4);
  EXPECT_NEAR(ks_critical_value(100, 0.05) * 10.0, 1.3581, 1e-4);
}

TEST(StatsTest, KsOnNormalSamples) {
  CounterRng rng(5);
  std::vector<double> s(100000);
  for (double& x : s) x = rng.gaussian();
  EXPECT_LT(ks_statistic_normal(s), 1.63 / std::sqrt(1e5));
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
}

TEST(StatsTest, KsRespectsKnownVariance) {
  CounterRng rng(6);
  std::vector<double> s(20000);
  for (double& x : s) x = 3.0 * rng.gaussian();
  std::vector<double> copy = s;
  EXPECT_LT(ks_statistic_normal(s, 9.0), ks_critical_value(20000, 0.01));
  EXPECT_GT(ks_statistic_normal(copy, 1.0), 0.1);
}

TEST(StatsTest, KsOnConstantSamples) {
  std::vector<double> s(1000, 0.0);
  EXPECT_NEAR(ks_statistic_normal(s), 0.5, 1e-12);
  std::vector<double> empty;
  EXPECT_THROW(ks_statistic_normal(empty), std::invalid_argument);
}

TEST(StatsTest, KsHandComputed) {
  // Single sample at 0: F_n jumps 0 -> 1 at Phi = 0.5.
  std::vector<double> s = {0.0};
  EXPECT_DOUBLE_EQ(ks_statistic_normal(s), 0.5);
  // Two samples at +-1: sup is max(Phi(-1), 0.5 - Phi(-1), ...).
  std::vector<double> t = {1.0, -1.0};
  const double p = normal_cdf(-1.0);
  EXPECT_NEAR(ks_statistic_normal(t), std::max(p, 0.5 - p), 1e-15);
}

TEST(StatsTest, SampleQuantileInterpolates) {
  const std::vector<double> s = {1.0, 2.0, 3.0, 4.0, 5.0};
  EXPECT_DOUBLE_EQ(sample_quantile(s, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(sample_quantile(s, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(sample_quantile(s, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(sample_quantile(s, 0.125), 1.5);
  EXPECT_THROW(sample_quantile({}, 0.5), std::invalid_argument);
}

TEST(StatsTest, BinomialHalfWidth) {
  EXPECT_NEAR(binomial_half_width(0.5, 10000), 1.96 * 0.005, 1e-15);
  EXPECT_EQ(binomial_half_width(0.0, 100), 0.0);
  EXPECT_EQ(binomial_half_width(0.5, 0), 0.0);
}

TEST(StatsTest, LogDetFloored) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(3, 3);
  c(0, 0) = 2.0;
  c(2, 2) = 0.5;
  EXPECT_NEAR(log_det_floored(c), 0.0, 1e-14);
  Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(2, 2);
  singular(0, 0) = 1.0;
  const double floor = 1e-12 * 1.0 / 2.0;
  EXPECT_NEAR(log_det_floored(singular), std::log(floor), 1e-9);
  EXPECT_THROW(log_det_floored(Eigen::MatrixXd::Zero(2, 2)), std::domain_error);
  EXPECT_THROW(log_det_floored(-Eigen::MatrixXd::Identity(2, 2)), std::domain_error);
}

TEST(StatsTest, HellingerGaussianKnownCases) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_EQ(hellinger_gaussian(a, a), 0.0);
  // Diagonal covariances factor into scalar coefficients.
  Eigen::MatrixXd b = a;
  b(0, 0) = 3.0;
  const double scalar_bc = std::sqrt(2.0 * std::sqrt(3.0) / 4.0);
  EXPECT_NEAR(hellinger_gaussian(a, b), std::sqrt(1.0 - scalar_bc), 1e-14);
  // Rotation invariance.
  Eigen::MatrixXd r(4, 4);
  r << 0.5, 0.5, 0.5, 0.5, 0.5, -0.5, 0.5, -0.5, 0.5, 0.5, -0.5, -0.5, 0.5, -0.5,
      -0.5, 0.5;
  EXPECT_NEAR(hellinger_gaussian(r * a * r.transpose(), r * b * r.transpose()),
              hellinger_gaussian(a, b), 1e-13);
  EXPECT_THROW(hellinger_gaussian(a, Eigen::MatrixXd::Identity(3, 3)),
               std::invalid_argument);
}

}  // namespace
}  // namespace agots
