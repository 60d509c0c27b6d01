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

// Encryption y = Phi x, the additive Gaussian channel, plaintext energy
// normalization and CoSaMP decryption.

#ifndef AGOTS_CODEC_H_
#define AGOTS_CODEC_H_

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "agots/rng.h"
#include "agots/sensing.h"

namespace agots {

// A decryption counts as a success below this ||x - x_hat||^2 / ||x||^2.
inline constexpr double kRecoverySuccessThreshold = 1e-2;

struct Plaintext {
  Eigen::VectorXd values;
  std::size_t sparsity = 0;

  double energy() const { return values.squaredNorm(); }
};

struct Ciphertext {
  Eigen::VectorXd values;
};

struct NoisyCiphertext {
  Eigen::VectorXd values;
  double noise_variance = 0.0;
};

struct RecoveryReport {
  Eigen::VectorXd estimate;
  std::size_t iterations = 0;
  double residual_norm = 0.0;
  // Residual norm of every iterate, in order.
  std::vector<double> residual_history;
  // Filled in by assess_recovery when the plaintext is known.
  std::optional<double> relative_error;
  bool success = false;
  // Some least-squares subproblem was rank deficient (min-norm solution).
  bool rank_deficient = false;
  // 2K > M: outside the regime CoSaMP is meant for.
  bool undersampled = false;
};

struct CosampOptions {
  std::size_t max_iter = 50;
  double tol = 1e-6;
};

// x * sqrt(target / ||x||^2). Throws std::invalid_argument for a zero
// vector or a non-positive target.
Plaintext normalize_energy(const Plaintext& x, double target_energy);

Ciphertext encrypt(const SensingMatrix& phi, const Plaintext& x);

// sigma^2 = energy / (M pnr); an infinite pnr gives 0.
double noise_variance_for_pnr(double energy, std::size_t m, double pnr);

NoisyCiphertext channel(const Ciphertext& y, double sigma2,
                        std::uint64_t seed);

RecoveryReport cosamp(const SensingMatrix& phi, const NoisyCiphertext& r,
                      std::size_t k, const CosampOptions& options = {});

// Sets relative_error and success against the true plaintext.
void assess_recovery(RecoveryReport& report, const Plaintext& truth);

// Exactly k nonzeros at uniformly drawn distinct positions, standard normal
// coefficients, rescaled to `energy`.
Plaintext random_sparse_plaintext(std::size_t n, std::size_t k, double energy,
                                  CounterRng& rng);

// Indices of the `count` largest |v_i|, ties broken toward the lower index,
// returned in ascending index order.
std::vector<Eigen::Index> largest_magnitude_indices(const Eigen::VectorXd& v,
                                                    std::size_t count);

}  // namespace agots

#endif  // AGOTS_CODEC_H_
