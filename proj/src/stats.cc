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

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace agots {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  static const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, p);
}

double ks_statistic_normal(std::vector<double>& samples, double variance) {
  if (samples.empty()) throw std::invalid_argument("KS: no samples");
  std::sort(samples.begin(), samples.end());
  const double scale = 1.0 / std::sqrt(variance);
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf(samples[i] * scale);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, above - f, f - below});
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) /
         std::sqrt(static_cast<double>(n));
}

double sample_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double binomial_half_width(double p, std::size_t trials) {
  if (trials == 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double log_det_floored(const Eigen::MatrixXd& c) {
  const Eigen::MatrixXd sym = 0.5 * (c + c.transpose());
  const double trace = sym.trace();
  if (!(trace > 0.0) || !std::isfinite(trace)) {
    throw std::domain_error("covariance estimate is not positive definite");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw std::domain_error("eigen-decomposition of covariance failed");
  }
  const double floor = 1e-12 * trace / static_cast<double>(sym.rows());
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    log_det += std::log(std::max(eig.eigenvalues()[i], floor));
  }
  return log_det;
}

double hellinger_gaussian(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2) {
  if (c1.rows() != c2.rows() || c1.cols() != c2.cols()) {
    throw std::invalid_argument("hellinger: covariance shapes differ");
  }
  const Eigen::MatrixXd c3 = 0.5 * (c1 + c2);
  const double log_gamma = 0.25 * log_det_floored(c1) +
                           0.25 * log_det_floored(c2) -
                           0.5 * log_det_floored(c3);
  return std::sqrt(std::clamp(-std::expm1(log_gamma), 0.0, 1.0));
}

}  // namespace agots
