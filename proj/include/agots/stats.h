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

// Statistical helpers: normality testing and Gaussian distances between
// estimated covariance matrices.

#ifndef AGOTS_STATS_H_
#define AGOTS_STATS_H_

#include <Eigen/Core>

#include <cstddef>
#include <utility>
#include <vector>

namespace agots {

double normal_cdf(double x);
double normal_quantile(double p);

// sup_x |F_n(x) - Phi(x / sqrt(variance))|. Sorts `samples` in place.
double ks_statistic_normal(std::vector<double>& samples, double variance = 1.0);

// Asymptotic one-sample KS critical value sqrt(-ln(alpha/2)/2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

// Linear-interpolation sample quantile of sorted data.
double sample_quantile(const std::vector<double>& sorted, double p);

// 1.96 sqrt(p (1 - p) / trials).
double binomial_half_width(double p, std::size_t trials);

// log |C| of a symmetric positive-definite estimate. The matrix is
// symmetrized and eigenvalues are floored at 1e-12 trace / M. Throws
// std::domain_error if the trace is not positive and finite.
double log_det_floored(const Eigen::MatrixXd& c);

// Hellinger distance between N(0, C1) and N(0, C2).
double hellinger_gaussian(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2);

}  // namespace agots

#endif  // AGOTS_STATS_H_
