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

// The public unitary factor U and the sensing operator Phi = S U / sqrt(MN).

#ifndef AGOTS_SENSING_H_
#define AGOTS_SENSING_H_

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

#include "agots/keystream.h"

namespace agots {

// N x N real matrix with U U^T = U^T U = N I.
class UnitaryMatrix {
 public:
  // Checks the scaled-unitary invariant to `tolerance * N` in max norm.
  explicit UnitaryMatrix(Eigen::MatrixXd entries, std::string id = "custom",
                         double tolerance = 1e-9);

  std::size_t dimension() const {
    return static_cast<std::size_t>(entries_.rows());
  }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const std::string& id() const { return id_; }

 private:
  Eigen::MatrixXd entries_;
  std::string id_;
};

// Row k, column t: c_k cos(pi (2t + 1) k / 2N), c_0 = 1, c_k = sqrt(2).
UnitaryMatrix dct_unitary(std::size_t n);

class SensingMatrix {
 public:
  SensingMatrix(Eigen::MatrixXd entries, std::string provenance)
      : entries_(std::move(entries)), provenance_(std::move(provenance)) {}

  std::size_t rows() const { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(entries_.cols()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const std::string& provenance() const { return provenance_; }

 private:
  Eigen::MatrixXd entries_;
  std::string provenance_;
};

// Dense Phi = S U / sqrt(MN). Throws std::invalid_argument on mismatch.
SensingMatrix build_phi(const SecretMatrix& s, const UnitaryMatrix& u);

// Phi x computed as S (U x) / sqrt(MN) without forming Phi.
Eigen::VectorXd apply_phi_factored(const SecretMatrix& s,
                                   const UnitaryMatrix& u,
                                   const Eigen::VectorXd& x);

// Entries of sqrt(M) Phi, row-major; their asymptotic variance is 1.
std::vector<double> row_gaussianity_samples(const SensingMatrix& phi);

}  // namespace agots

#endif  // AGOTS_SENSING_H_
