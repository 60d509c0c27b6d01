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

#include "agots/codec.h"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace agots {

Plaintext normalize_energy(const Plaintext& x, double target_energy) {
  if (!(target_energy > 0.0)) {
    throw std::invalid_argument("normalize_energy: target must be positive");
  }
  const double norm = x.values.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("normalize_energy: cannot normalize a zero vector");
  }
  Plaintext out = x;
  out.values *= std::sqrt(target_energy) / norm;
  return out;
}

Ciphertext encrypt(const SensingMatrix& phi, const Plaintext& x) {
  if (static_cast<std::size_t>(x.values.size()) != phi.cols()) {
    throw std::invalid_argument("encrypt: plaintext length " +
                                std::to_string(x.values.size()) +
                                " != sensing matrix width " +
                                std::to_string(phi.cols()));
  }
  return Ciphertext{phi.entries() * x.values};
}

double noise_variance_for_pnr(double energy, std::size_t m, double pnr) {
  if (!(energy > 0.0) || m == 0 || !(pnr > 0.0)) {
    throw std::invalid_argument(
        "noise_variance_for_pnr: energy, M and PNR must be positive");
  }
  if (std::isinf(pnr)) return 0.0;
  return energy / (static_cast<double>(m) * pnr);
}

NoisyCiphertext channel(const Ciphertext& y, double sigma2,
                        std::uint64_t seed) {
  if (!(sigma2 >= 0.0)) {
    throw std::invalid_argument("channel: noise variance must be >= 0");
  }
  NoisyCiphertext r{y.values, sigma2};
  if (sigma2 == 0.0) return r;
  CounterRng rng(seed);
  const double sigma = std::sqrt(sigma2);
  for (Eigen::Index i = 0; i < r.values.size(); ++i) {
    r.values[i] += sigma * rng.gaussian();
  }
  return r;
}

std::vector<Eigen::Index> largest_magnitude_indices(const Eigen::VectorXd& v,
                                                    std::size_t count) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  count = std::min(count, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count),
                    idx.end(), [&v](Eigen::Index a, Eigen::Index b) {
                      const double ma = std::abs(v[a]);
                      const double mb = std::abs(v[b]);
                      return ma > mb || (ma == mb && a < b);
                    });
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

RecoveryReport cosamp(const SensingMatrix& phi, const NoisyCiphertext& r,
                      std::size_t k, const CosampOptions& options) {
  const auto& a = phi.entries();
  if (k == 0) throw std::invalid_argument("cosamp: K must be >= 1");
  if (static_cast<std::size_t>(r.values.size()) != phi.rows()) {
    throw std::invalid_argument("cosamp: ciphertext length != M");
  }
  const Eigen::Index n = a.cols();

  RecoveryReport report;
  report.undersampled = 2 * k > phi.rows();
  report.estimate = Eigen::VectorXd::Zero(n);
  const double r_norm = r.values.norm();
  report.residual_norm = r_norm;

  Eigen::VectorXd estimate = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd residual = r.values;
  std::vector<Eigen::Index> support;

  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    const Eigen::VectorXd proxy = a.transpose() * residual;
    std::vector<Eigen::Index> merged = largest_magnitude_indices(proxy, 2 * k);
    merged.insert(merged.end(), support.begin(), support.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(merged.size()));
    for (std::size_t j = 0; j < merged.size(); ++j) {
      sub.col(static_cast<Eigen::Index>(j)) = a.col(merged[j]);
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
    if (cod.rank() < sub.cols()) report.rank_deficient = true;
    const Eigen::VectorXd coeffs = cod.solve(r.values);

    const auto keep = largest_magnitude_indices(coeffs, k);
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
    support.clear();
    for (Eigen::Index j : keep) {
      next[merged[static_cast<std::size_t>(j)]] = coeffs[j];
      support.push_back(merged[static_cast<std::size_t>(j)]);
    }

    residual = r.values;
    for (Eigen::Index col : support) residual -= next[col] * a.col(col);
    const double res_norm = residual.norm();
    report.residual_history.push_back(res_norm);
    report.iterations = iter;

    if (res_norm < report.residual_norm) {
      report.residual_norm = res_norm;
      report.estimate = next;
    }
    if (res_norm <= options.tol * r_norm) break;
    // Same iterate twice means the loop has reached a fixed point.
    if (next == estimate) break;
    estimate = std::move(next);
  }
  return report;
}

void assess_recovery(RecoveryReport& report, const Plaintext& truth) {
  const double energy = truth.energy();
  if (!(energy > 0.0)) {
    report.relative_error.reset();
    report.success = false;
    return;
  }
  const double err = (truth.values - report.estimate).squaredNorm() / energy;
  report.relative_error = err;
  report.success = err < kRecoverySuccessThreshold;
}

Plaintext random_sparse_plaintext(std::size_t n, std::size_t k, double energy,
                                  CounterRng& rng) {
  if (k == 0 || k > n) {
    throw std::invalid_argument("random_sparse_plaintext: need 1 <= K <= N");
  }
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(positions[i], positions[j]);
  }
  Plaintext x{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), k};
  for (std::size_t i = 0; i < k; ++i) {
    x.values[static_cast<Eigen::Index>(positions[i])] = rng.gaussian();
  }
  return normalize_energy(x, energy);
}

}  // namespace agots
