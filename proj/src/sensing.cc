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

#include "agots/sensing.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace agots {

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXd entries, std::string id,
                             double tolerance)
    : entries_(std::move(entries)), id_(std::move(id)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("unitary matrix must be square and non-empty");
  }
  const auto n = static_cast<double>(entries_.rows());
  const Eigen::MatrixXd gram = entries_ * entries_.transpose();
  const double deviation =
      (gram - n * Eigen::MatrixXd::Identity(entries_.rows(), entries_.rows()))
          .cwiseAbs()
          .maxCoeff();
  if (deviation >= tolerance * n) {
    throw std::invalid_argument("matrix is not scaled-unitary (U U^T != N I)");
  }
}

UnitaryMatrix dct_unitary(std::size_t n) {
  if (n == 0) throw std::invalid_argument("dct_unitary: N must be >= 1");
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd d(size, size);
  const double denom = 2.0 * static_cast<double>(n);
  for (Eigen::Index k = 0; k < size; ++k) {
    const double c = k == 0 ? 1.0 : std::numbers::sqrt2;
    for (Eigen::Index t = 0; t < size; ++t) {
      d(k, t) = c * std::cos(std::numbers::pi *
                             static_cast<double>((2 * t + 1) * k) / denom);
    }
  }
  return UnitaryMatrix(std::move(d), "dct" + std::to_string(n));
}

SensingMatrix build_phi(const SecretMatrix& s, const UnitaryMatrix& u) {
  if (s.cols() != u.dimension()) {
    throw std::invalid_argument("build_phi: S has " + std::to_string(s.cols()) +
                                " columns but U is " +
                                std::to_string(u.dimension()) + "-dimensional");
  }
  const double scale =
      1.0 / std::sqrt(static_cast<double>(s.rows()) * static_cast<double>(s.cols()));
  Eigen::MatrixXd phi = scale * (s.dense() * u.entries());
  return SensingMatrix(std::move(phi),
                       std::string(to_string(s.generation())) + "*" + u.id());
}

Eigen::VectorXd apply_phi_factored(const SecretMatrix& s,
                                   const UnitaryMatrix& u,
                                   const Eigen::VectorXd& x) {
  if (s.cols() != u.dimension() ||
      static_cast<std::size_t>(x.size()) != u.dimension()) {
    throw std::invalid_argument("apply_phi_factored: dimension mismatch");
  }
  const double scale =
      1.0 / std::sqrt(static_cast<double>(s.rows()) * static_cast<double>(s.cols()));
  const Eigen::VectorXd z = u.entries() * x;
  return scale * s.multiply(z);
}

std::vector<double> row_gaussianity_samples(const SensingMatrix& phi) {
  const double root_m = std::sqrt(static_cast<double>(phi.rows()));
  std::vector<double> out;
  out.reserve(phi.rows() * phi.cols());
  const auto& e = phi.entries();
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    for (Eigen::Index c = 0; c < e.cols(); ++c) out.push_back(root_m * e(r, c));
  }
  return out;
}

}  // namespace agots
