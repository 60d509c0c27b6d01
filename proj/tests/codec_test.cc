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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "agots/sensing.h"

namespace agots {
namespace {

Plaintext vec(std::initializer_list<double> v, std::size_t k = 8) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return Plaintext{x, k};
}

SensingMatrix random_phi(std::size_t m, std::size_t n, std::uint64_t key,
                         SecretMode mode = SecretMode::kSsg) {
  auto source = SecretMatrixSource::make(mode, key);
  return build_phi(source.next(m, n), dct_unitary(n));
}

TEST(CodecTest, NormalizeEnergyExamples) {
  const Plaintext a = normalize_energy(vec({3, 4, 0}), 1.0);
  EXPECT_NEAR(a.values[0], 0.6, 1e-15);
  EXPECT_NEAR(a.values[1], 0.8, 1e-15);
  EXPECT_EQ(a.values[2], 0.0);
  const Plaintext b = normalize_energy(vec({0.6, 0.8}), 1.0);
  EXPECT_NEAR(b.values[0], 0.6, 1e-15);
  const Plaintext c = normalize_energy(vec({2, 0}), 8.0);
  EXPECT_NEAR(c.values[0], 2.0 * std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(c.energy(), 8.0, 1e-14);
}

TEST(CodecTest, NormalizeEnergyErrors) {
  EXPECT_THROW(normalize_energy(vec({0, 0}), 1.0), std::invalid_argument);
  EXPECT_THROW(normalize_energy(vec({1, 0}), 0.0), std::invalid_argument);
}

TEST(CodecTest, EncryptHandExample) {
  const SecretMatrix s(1, 2, {1, 1}, SecretMode::kSsg);
  const SensingMatrix phi = build_phi(s, dct_unitary(2));
  const Ciphertext y = encrypt(phi, vec({1, 0}));
  ASSERT_EQ(y.values.size(), 1);
  EXPECT_NEAR(y.values[0], std::numbers::sqrt2, 1e-15);
  EXPECT_EQ(encrypt(phi, vec({0, 0})).values[0], 0.0);
  EXPECT_THROW(encrypt(phi, vec({1, 0, 0})), std::invalid_argument);
}

TEST(CodecTest, EncryptIsLinear) {
  const SensingMatrix phi = random_phi(32, 128, 3);
  CounterRng rng(1);
  const Plaintext x1 = random_sparse_plaintext(128, 8, 1.0, rng);
  const Plaintext x2 = random_sparse_plaintext(128, 8, 2.0, rng);
  const Plaintext sum{x1.values + x2.values, 16};
  const Eigen::VectorXd lhs = encrypt(phi, sum).values;
  const Eigen::VectorXd rhs = encrypt(phi, x1).values + encrypt(phi, x2).values;
  EXPECT_LT((lhs - rhs).norm() / rhs.norm(), 1e-12);
  const Plaintext scaled{3.5 * x1.values, 8};
  EXPECT_LT((encrypt(phi, scaled).values - 3.5 * encrypt(phi, x1).values).norm() /
                encrypt(phi, scaled).values.norm(),
            1e-12);
}

TEST(CodecTest, NoiseVarianceExamples) {
  EXPECT_DOUBLE_EQ(noise_variance_for_pnr(1.0, 64, 100.0), 1.5625e-4);
  EXPECT_DOUBLE_EQ(noise_variance_for_pnr(1.0, 1, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(noise_variance_for_pnr(4.0, 2, 2.0), 1.0);
  EXPECT_EQ(noise_variance_for_pnr(1.0, 8, std::numeric_limits<double>::infinity()),
            0.0);
  EXPECT_THROW(noise_variance_for_pnr(0.0, 8, 1.0), std::invalid_argument);
  EXPECT_THROW(noise_variance_for_pnr(1.0, 0, 1.0), std::invalid_argument);
  EXPECT_THROW(noise_variance_for_pnr(1.0, 8, -1.0), std::invalid_argument);
}

TEST(CodecTest, ChannelZeroNoiseIsIdentity) {
  const Ciphertext y{Eigen::VectorXd::LinSpaced(10, -1.0, 1.0)};
  const NoisyCiphertext r = channel(y, 0.0, 5);
  EXPECT_EQ(r.values, y.values);
  EXPECT_EQ(r.noise_variance, 0.0);
  EXPECT_THROW(channel(y, -1.0, 5), std::invalid_argument);
}

TEST(CodecTest, ChannelIsDeterministicPerSeed) {
  const Ciphertext y{Eigen::VectorXd::Zero(64)};
  EXPECT_EQ(channel(y, 1.0, 9).values, channel(y, 1.0, 9).values);
  EXPECT_NE(channel(y, 1.0, 9).values, channel(y, 1.0, 10).values);
}

TEST(CodecTest, ChannelVariance) {
  const Ciphertext y{Eigen::VectorXd::Zero(64)};
  const int draws = 100000;
  Eigen::VectorXd sum2 = Eigen::VectorXd::Zero(64);
  for (int d = 0; d < draws; ++d) {
    sum2 += channel(y, 1.0, derive_seed(77, {static_cast<std::uint64_t>(d)}))
                .values.cwiseAbs2();
  }
  const Eigen::VectorXd per_coord = sum2 / draws;
  // Pooled over coordinates the window [0.99, 1.01] is about 18 standard
  // errors wide; a single coordinate gets a 5-sigma window.
  EXPECT_GE(per_coord.mean(), 0.99);
  EXPECT_LE(per_coord.mean(), 1.01);
  const double coord_sd = std::sqrt(2.0 / draws);
  for (Eigen::Index i = 0; i < 64; ++i) {
    EXPECT_NEAR(per_coord[i], 1.0, 5.0 * coord_sd) << "coordinate " << i;
  }
}

TEST(CodecTest, CiphertextEnergyConcentrates) {
  auto source = SecretMatrixSource::make(SecretMode::kSsg, 12);
  const UnitaryMatrix u = dct_unitary(512);
  CounterRng rng(6);
  const Plaintext x = random_sparse_plaintext(512, 8, 1.0, rng);
  double total = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    total += apply_phi_factored(source.next(64, 512), u, x.values).squaredNorm();
  }
  EXPECT_NEAR(total / n, x.energy(), 0.02 * x.energy());
}

TEST(CodecTest, SparsePlaintextShape) {
  CounterRng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Plaintext x = random_sparse_plaintext(64, 5, 2.5, rng);
    EXPECT_EQ((x.values.array() != 0.0).count(), 5);
    EXPECT_NEAR(x.energy(), 2.5, 1e-12);
    EXPECT_EQ(x.sparsity, 5u);
  }
  EXPECT_THROW(random_sparse_plaintext(4, 5, 1.0, rng), std::invalid_argument);
  EXPECT_THROW(random_sparse_plaintext(4, 0, 1.0, rng), std::invalid_argument);
}

TEST(CodecTest, SparsePositionsAreUniform) {
  CounterRng rng(8);
  std::vector<int> hits(16, 0);
  const int trials = 40000;
  for (int t = 0; t < trials; ++t) {
    const Plaintext x = random_sparse_plaintext(16, 2, 1.0, rng);
    for (Eigen::Index i = 0; i < 16; ++i) hits[i] += x.values[i] != 0.0;
  }
  const double expect = trials * 2.0 / 16.0;
  for (int h : hits) EXPECT_NEAR(h, expect, 5.0 * std::sqrt(expect));
}

TEST(CodecTest, LargestIndicesTieBreakLow) {
  Eigen::VectorXd v(6);
  v << 1.0, -3.0, 3.0, 0.5, -1.0, 2.0;
  EXPECT_EQ(largest_magnitude_indices(v, 2), (std::vector<Eigen::Index>{1, 2}));
  EXPECT_EQ(largest_magnitude_indices(v, 4),
            (std::vector<Eigen::Index>{0, 1, 2, 5}));
  Eigen::VectorXd flat = Eigen::VectorXd::Ones(5);
  EXPECT_EQ(largest_magnitude_indices(flat, 3), (std::vector<Eigen::Index>{0, 1, 2}));
  EXPECT_EQ(largest_magnitude_indices(flat, 9).size(), 5u);
}

TEST(CodecTest, CosampDeterminedSystemIsExact) {
  const SensingMatrix phi = random_phi(8, 8, 2, SecretMode::kBernoulli);
  for (Eigen::Index pos = 0; pos < 8; ++pos) {
    Plaintext x{Eigen::VectorXd::Zero(8), 1};
    x.values[pos] = -1.7;
    const NoisyCiphertext r{encrypt(phi, x).values, 0.0};
    RecoveryReport rep = cosamp(phi, r, 1);
    assess_recovery(rep, x);
    ASSERT_TRUE(rep.relative_error.has_value());
    EXPECT_LT(*rep.relative_error, 1e-10) << "position " << pos;
    EXPECT_TRUE(rep.success);
  }
}

TEST(CodecTest, CosampZeroPlaintextDoesNotCrash) {
  const SensingMatrix phi = random_phi(64, 256, 4);
  const NoisyCiphertext r = channel(Ciphertext{Eigen::VectorXd::Zero(64)}, 0.01, 3);
  RecoveryReport rep = cosamp(phi, r, 8);
  EXPECT_LE((rep.estimate.array() != 0.0).count(), 8);
  assess_recovery(rep, Plaintext{Eigen::VectorXd::Zero(256), 8});
  EXPECT_FALSE(rep.relative_error.has_value());
  EXPECT_FALSE(rep.success);

  const NoisyCiphertext zero{Eigen::VectorXd::Zero(64), 0.0};
  const RecoveryReport z = cosamp(phi, zero, 8);
  EXPECT_EQ(z.estimate, Eigen::VectorXd::Zero(256));
}

TEST(CodecTest, CosampReturnsBestIterate) {
  const SensingMatrix phi = random_phi(40, 256, 5);
  CounterRng rng(2);
  for (int t = 0; t < 20; ++t) {
    const Plaintext x = random_sparse_plaintext(256, 10, 1.0, rng);
    const NoisyCiphertext r = channel(encrypt(phi, x), 0.01, 100 + t);
    const RecoveryReport rep = cosamp(phi, r, 10);
    ASSERT_FALSE(rep.residual_history.empty());
    EXPECT_EQ(rep.iterations, rep.residual_history.size());
    const double best =
        *std::min_element(rep.residual_history.begin(), rep.residual_history.end());
    EXPECT_EQ(rep.residual_norm, std::min(best, r.values.norm()));
    // Residual of the returned estimate is the reported one.
    EXPECT_NEAR((r.values - phi.entries() * rep.estimate).norm(), rep.residual_norm,
                1e-9);
    EXPECT_LE((rep.estimate.array() != 0.0).count(), 10);
  }
}

TEST(CodecTest, CosampFlagsUndersampledAndRankDeficient) {
  const SensingMatrix phi = random_phi(6, 64, 6);
  CounterRng rng(1);
  const Plaintext x = random_sparse_plaintext(64, 4, 1.0, rng);
  const RecoveryReport rep = cosamp(phi, NoisyCiphertext{encrypt(phi, x).values, 0.0}, 4);
  EXPECT_TRUE(rep.undersampled);
  EXPECT_TRUE(rep.rank_deficient);
  EXPECT_THROW(cosamp(phi, NoisyCiphertext{Eigen::VectorXd::Zero(5), 0.0}, 4),
               std::invalid_argument);
  EXPECT_THROW(cosamp(phi, NoisyCiphertext{Eigen::VectorXd::Zero(6), 0.0}, 0),
               std::invalid_argument);
}

TEST(CodecTest, SuccessFlagMatchesThreshold) {
  RecoveryReport rep;
  rep.estimate = Eigen::VectorXd::Zero(2);
  rep.estimate[0] = 1.0 - 0.099;
  assess_recovery(rep, vec({1.0, 0.0}));
  EXPECT_LT(*rep.relative_error, kRecoverySuccessThreshold);
  EXPECT_TRUE(rep.success);
  rep.estimate[0] = 0.89;
  assess_recovery(rep, vec({1.0, 0.0}));
  EXPECT_FALSE(rep.success);
}

double success_rate(std::size_t m, int trials, std::uint64_t seed) {
  auto source = SecretMatrixSource::make(SecretMode::kSsg, seed);
  const UnitaryMatrix u = dct_unitary(512);
  CounterRng rng(seed + 1);
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    const SensingMatrix phi = build_phi(source.next(m, 512), u);
    const Plaintext x = random_sparse_plaintext(512, 8, 1.0, rng);
    const NoisyCiphertext r =
        channel(encrypt(phi, x), noise_variance_for_pnr(1.0, m, 100.0),
                derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    RecoveryReport rep = cosamp(phi, r, 8);
    assess_recovery(rep, x);
    ok += rep.success ? 1 : 0;
  }
  return static_cast<double>(ok) / trials;
}

TEST(CodecTest, RecoveryAtModerateCompression) {
  EXPECT_GE(success_rate(128, 500, 21), 0.95);
}

TEST(CodecTest, RecoveryImprovesWithMeasurements) {
  EXPECT_GE(success_rate(192, 500, 22), success_rate(64, 500, 23));
}

}  // namespace
}  // namespace agots
