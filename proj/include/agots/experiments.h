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

// Monte-Carlo harness: the two-plaintext indistinguishability game with a
// likelihood-ratio adversary, recipient decryption rates, empirical
// ciphertext covariances, Gaussianity of the sensing entries and empirical
// TV bounds.
//
// Seeding: every random draw comes from derive_seed(master_seed, path) with
// a path naming the grid point, trial or block and the purpose of the draw.
// Trials and matrices are grouped in blocks of kBlockSize; each block reads
// its secret matrices sequentially from one keystream. Results are
// therefore independent of the thread count.

#ifndef AGOTS_EXPERIMENTS_H_
#define AGOTS_EXPERIMENTS_H_

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "agots/analysis.h"
#include "agots/codec.h"
#include "agots/keystream.h"
#include "agots/sensing.h"

namespace agots {

enum class SweepAxis { kGamma, kM, kPnr };

std::string to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name);

struct ExperimentConfig {
  std::size_t n = 512;
  std::size_t m = 64;
  std::size_t k = 8;
  double gamma = 1.0;
  // PNR_max in dB; +inf is the noiseless limit.
  double pnr_max_db = 20.0;
  // Indistinguishability-game trials per grid point.
  std::size_t trials = 1000;
  // Recipient decryptions per grid point; defaults to `trials`.
  std::optional<std::size_t> recipient_trials;
  std::uint64_t master_seed = 1;
  SecretMode s_mode = SecretMode::kSsg;
  // Re-seed the keystream per matrix instead of consuming it sequentially.
  bool rekey_per_encryption = false;
  std::string eps = "1/sqrtN";
  SweepAxis sweep_axis = SweepAxis::kM;
  // Axis values; empty means the single point given by the scalar fields.
  std::vector<double> grid;
  // Secret matrices averaged by `cov`.
  std::size_t cov_matrices = 10000;
  // Matrices whose entries feed `qq`.
  std::size_t qq_matrices = 100;
  // Matrices per covariance estimate in `tv-empirical`.
  std::size_t tv_matrices = 100000;
  CosampOptions cosamp;

  double pnr_max() const { return db_to_linear(pnr_max_db); }
  std::size_t recipient_trial_count() const {
    return recipient_trials.value_or(trials);
  }
  // Throws ConfigError naming the offending key.
  void validate() const;
  // Copy with the sweep axis set to `value`.
  ExperimentConfig at(double value) const;
  std::vector<double> axis_values() const;
};

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Runs body(i) for i in [0, count) on up to `threads` workers. Exceptions
// are rethrown on the calling thread.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

inline constexpr std::size_t kBlockSize = 256;

// Smallest sample count accepted by the empirical TV estimators.
inline constexpr std::size_t kMinTvMatrices = 1000;

// Convention for the game: the larger plaintext energy is 1.
inline constexpr double kMaxEnergy = 1.0;

// Likelihood-ratio test on ||r||^2 between N(0, v1 I) and N(0, v2 I).
// Returns 1 or 2. Equal variances fall back to `coin`; a tie at the
// threshold goes to the larger variance.
int energy_detector(const Eigen::VectorXd& r, double v1, double v2,
                    CounterRng& coin);
// tau = M ln(v_hi / v_lo) / (1 / v_lo - 1 / v_hi).
double energy_threshold(std::size_t m, double v1, double v2);

struct TrialOutcome {
  int h = 1;
  int h_prime = 1;
  std::optional<bool> recipient_success;
  std::optional<double> recipient_error;
};

// One round of the game: x1 with energy gamma, x2 with energy 1, secret h,
// fresh S, r = Phi x_h + n, adversary guess h'. With `decrypt`, the
// recipient also runs CoSaMP on r.
TrialOutcome indistinguishability_trial(const ExperimentConfig& cfg,
                                        const UnitaryMatrix& u,
                                        std::uint64_t grid_index,
                                        std::uint64_t trial_index,
                                        bool decrypt);

struct RecipientOutcome {
  bool success = false;
  double relative_error = 0.0;
};
// Recipient decryption with plaintext energy alpha ~ U[gamma, 1].
RecipientOutcome recipient_trial(const ExperimentConfig& cfg,
                                 const UnitaryMatrix& u,
                                 std::uint64_t grid_index,
                                 std::uint64_t trial_index);

// U x using only the nonzero entries of x.
Eigen::VectorXd transform_sparse(const UnitaryMatrix& u,
                                 const Eigen::VectorXd& x);

// Fixed plaintext used by cov / tv-empirical, unit energy.
Plaintext reference_plaintext(const ExperimentConfig& cfg);

// M * (1/n) sum r r^T over fresh S and fresh noise, sigma^2 set from
// unit maximum energy and PNR_max.
Eigen::MatrixXd empirical_covariance(const ExperimentConfig& cfg,
                                     const UnitaryMatrix& u,
                                     const Plaintext& x,
                                     std::size_t n_matrices,
                                     std::size_t threads = 1);

// Second moments of r1 = Phi x1 + n and r2 = Phi x2 + n, where both
// ciphertexts share each draw of S and n.
struct PairedCovariances {
  Eigen::MatrixXd c1;
  Eigen::MatrixXd c2;
};
PairedCovariances paired_covariances(const ExperimentConfig& cfg,
                                     const UnitaryMatrix& u,
                                     const Plaintext& x1, const Plaintext& x2,
                                     std::size_t n_matrices,
                                     std::size_t threads = 1);

TvBounds empirical_tv_bounds(const ExperimentConfig& cfg,
                             const UnitaryMatrix& u, const Plaintext& x1,
                             const Plaintext& x2, std::size_t n_matrices,
                             std::size_t threads = 1);

struct TvCurvePoint {
  double gamma = 1.0;
  TvBounds closed_form;
  TvBounds empirical;
};
// Empirical bounds for x1 = sqrt(gamma) x, x2 = x over a gamma grid, from a
// single pass of shared S and noise draws.
std::vector<TvCurvePoint> empirical_tv_curve(const ExperimentConfig& cfg,
                                             const UnitaryMatrix& u,
                                             const Plaintext& x,
                                             const std::vector<double>& gammas,
                                             std::size_t n_matrices,
                                             std::size_t threads = 1);

struct QqPoint {
  double theoretical = 0.0;
  double empirical = 0.0;
};
struct GaussianityReport {
  double ks_statistic = 0.0;
  double ks_critical_01 = 0.0;
  std::vector<QqPoint> qq_points;
};
// Samples are standardized by the known `variance`, not a fitted one.
// Throws std::invalid_argument for fewer than 100 samples.
GaussianityReport gaussianity_report(std::vector<double> samples,
                                     double variance = 1.0);

// Entries of sqrt(M) Phi over `n_matrices` fresh sensing matrices.
std::vector<double> phi_entry_samples(const ExperimentConfig& cfg,
                                      const UnitaryMatrix& u,
                                      std::size_t n_matrices,
                                      std::size_t threads = 1);

struct SweepRecord {
  double axis_value = 0.0;
  double adv_success = 0.0;
  double adv_ci = 0.0;
  double pd_bound = 0.5;
  double recip_success = 0.0;
  double recip_ci = 0.0;
};

struct ExperimentResult {
  SweepAxis axis = SweepAxis::kM;
  std::vector<SweepRecord> records;
};

ExperimentResult sweep(const ExperimentConfig& cfg, std::size_t threads = 1);

struct GameSummary {
  std::vector<TrialOutcome> outcomes;
  double adv_success = 0.0;
  double adv_ci = 0.0;
  double pd_bound = 0.5;
  double recip_success = 0.0;
  double recip_ci = 0.0;
};
GameSummary run_game(const ExperimentConfig& cfg, bool decrypt,
                     std::size_t threads = 1);

}  // namespace agots

#endif  // AGOTS_EXPERIMENTS_H_
