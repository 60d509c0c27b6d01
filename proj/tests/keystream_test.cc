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


#include "agots/keystream.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace agots {
namespace {

// Test-side Fibonacci register on a packed integer state: bit i = stage i.
struct ToyLfsr {
  std::uint32_t state;
  std::uint32_t tap_mask;
  std::size_t degree;

  std::uint8_t step() {
    const std::uint8_t out = state & 1U;
    const std::uint32_t fb = __builtin_parity(state & tap_mask);
    state = (state >> 1) | (fb << (degree - 1));
    return out;
  }
};

std::uint32_t mask_of(const std::vector<std::size_t>& taps) {
  std::uint32_t m = 0;
  for (auto t : taps) m |= 1U << t;
  return m;
}

std::vector<std::uint8_t> state_bits(std::uint32_t s, std::size_t degree) {
  std::vector<std::uint8_t> bits(degree);
  for (std::size_t i = 0; i < degree; ++i) bits[i] = (s >> i) & 1U;
  return bits;
}

LfsrConfig small_config(std::size_t degree, std::uint32_t state) {
  LfsrConfig c;
  c.degree = degree;
  c.feedback_taps = primitive_polynomial(degree).taps;
  c.initial_state = state_bits(state, degree);
  return c;
}

// Smallest p in [1, n) with s[t] = s[t + p] for all valid t; n if none.
std::size_t smallest_period(const std::vector<std::uint8_t>& s) {
  for (std::size_t p = 1; p < s.size(); ++p) {
    bool ok = true;
    for (std::size_t t = 0; t + p < s.size() && ok; ++t) ok = s[t] == s[t + p];
    if (ok) return p;
  }
  return s.size();
}

TEST(KeystreamTest, PinnedPolynomialsHaveMaximalPeriod) {
  for (std::size_t degree = 2; degree <= 16; ++degree) {
    // Independent count: steps of a toy register until the state recurs.
    ToyLfsr toy{1U, mask_of(primitive_polynomial(degree).taps), degree};
    std::uint64_t steps = 0;
    do {
      toy.step();
      ++steps;
    } while (toy.state != 1U && steps <= (1ULL << degree));
    EXPECT_EQ(steps, (1ULL << degree) - 1) << "degree " << degree;

    const auto period = lfsr_period(small_config(degree, 1));
    ASSERT_TRUE(period.has_value());
    EXPECT_EQ(*period, (1ULL << degree) - 1) << "degree " << degree;
  }
}

TEST(KeystreamTest, NonPrimitivePolynomialHasShortPeriod) {
  // x^4 + x^2 + 1 = (x^2 + x + 1)^2 is reducible.
  LfsrConfig c;
  c.degree = 4;
  c.feedback_taps = {0, 2};
  c.initial_state = state_bits(1, 4);
  const auto period = lfsr_period(c);
  ASSERT_TRUE(period.has_value());
  EXPECT_LT(*period, 15u);
}

TEST(KeystreamTest, ClaimedMSequenceIsVerified) {
  LfsrConfig c;
  c.degree = 4;
  c.feedback_taps = {0, 2};
  c.initial_state = state_bits(1, 4);
  c.claims_m_sequence = true;
  EXPECT_THROW(Lfsr{c}, std::invalid_argument);
  LfsrConfig ok = small_config(5, 3);
  ok.claims_m_sequence = true;
  EXPECT_NO_THROW(Lfsr{ok});
}

TEST(KeystreamTest, StreamMatchesToyRegister) {
  for (std::size_t degree : {3u, 7u, 12u, 16u}) {
    const std::uint32_t seed = 0x5A5AU & ((1U << degree) - 1U);
    ToyLfsr toy{seed, mask_of(primitive_polynomial(degree).taps), degree};
    const auto bits = lfsr_stream(small_config(degree, seed), 500).bits;
    for (std::size_t t = 0; t < bits.size(); ++t) {
      ASSERT_EQ(bits[t], toy.step()) << "degree " << degree << " t " << t;
    }
  }
}

TEST(KeystreamTest, OutputSatisfiesRecurrence) {
  const LfsrConfig c = default_lfsr_config(17);
  const auto a = lfsr_stream(c, 2000).bits;
  for (std::size_t t = 0; t + c.degree < a.size(); ++t) {
    std::uint8_t x = 0;
    for (auto i : c.feedback_taps) x ^= a[t + i];
    ASSERT_EQ(a[t + c.degree], x) << "t " << t;
  }
  for (std::size_t i = 0; i < c.degree; ++i) EXPECT_EQ(a[i], c.initial_state[i]);
}

TEST(KeystreamTest, DefaultRegister) {
  const LfsrConfig c = default_lfsr_config(1);
  EXPECT_EQ(c.degree, 128u);
  EXPECT_EQ(c.feedback_taps, (std::vector<std::size_t>{0, 1, 2, 7}));
  EXPECT_NE(default_lfsr_config(1).initial_state,
            default_lfsr_config(2).initial_state);
}

TEST(KeystreamTest, WordPathMatchesSerialPath) {
  const LfsrConfig c = default_lfsr_config(99);
  Lfsr serial(c), word(c);
  ASSERT_TRUE(word.word_parallel());
  for (int w = 0; w < 50; ++w) {
    const std::uint64_t packed = word.next_word();
    for (int j = 0; j < 64; ++j) {
      ASSERT_EQ((packed >> j) & 1U, serial.next_bit()) << "word " << w;
    }
  }
  EXPECT_EQ(serial.state(), word.state());

  // A register too short for word stepping falls back and still agrees.
  const LfsrConfig s = small_config(12, 0xABC);
  Lfsr serial_small(s), word_small(s);
  EXPECT_FALSE(word_small.word_parallel());
  const std::uint64_t packed = word_small.next_word();
  for (int j = 0; j < 64; ++j) {
    EXPECT_EQ((packed >> j) & 1U, serial_small.next_bit());
  }
}

TEST(KeystreamTest, DegreeFourExamples) {
  LfsrConfig c;
  c.degree = 4;
  c.feedback_taps = {0, 1};  // x^4 + x + 1
  c.initial_state = {1, 0, 0, 0};
  const auto bits = lfsr_stream(c, 30).bits;
  for (std::size_t t = 0; t < 15; ++t) EXPECT_EQ(bits[t], bits[t + 15]);
  EXPECT_EQ(smallest_period(bits), 15u);
  EXPECT_EQ(std::count(bits.begin(), bits.begin() + 15, 1), 8);
}

TEST(KeystreamTest, SingleStageSelfFeedback) {
  LfsrConfig c;
  c.degree = 1;
  c.feedback_taps = {0};
  c.initial_state = {1};
  EXPECT_EQ(lfsr_stream(c, 4).bits, (std::vector<std::uint8_t>{1, 1, 1, 1}));
}

TEST(KeystreamTest, SelfShrinkRule) {
  BitSequence a;
  a.bits = {1, 0};
  EXPECT_EQ(self_shrink(a).bits, (std::vector<std::uint8_t>{0}));
  a.bits = {0, 1};
  EXPECT_TRUE(self_shrink(a).bits.empty());
  a.bits = {1, 1, 0, 0, 1, 0};
  EXPECT_EQ(self_shrink(a).bits, (std::vector<std::uint8_t>{1, 0}));
}

TEST(KeystreamTest, SelfShrinkHandExample) {
  BitSequence a;
  a.bits = {1, 0, 0, 1, 1, 1, 0, 0, 1, 1, 0};
  // Pairs (1,0) (0,1) (1,1) (0,0) (1,1); trailing bit ignored.
  const BitSequence s = self_shrink(a);
  EXPECT_EQ(s.bits, (std::vector<std::uint8_t>{0, 1, 1}));
  EXPECT_EQ(s.source_kind, SourceKind::kSsgOutput);
}

TEST(KeystreamTest, BipolarMapping) {
  BitSequence b;
  b.bits = {0, 1, 1, 0};
  const BipolarStream p = bipolar(b);
  EXPECT_EQ(p.symbols, (std::vector<std::int8_t>{1, -1, -1, 1}));
  EXPECT_EQ(p.remaining(), 4u);
}

TEST(KeystreamTest, StreamingGeneratorMatchesBatch) {
  const LfsrConfig c = default_lfsr_config(5);
  const auto batch = self_shrink(lfsr_stream(c, 40000)).bits;
  SelfShrinkingGenerator gen(c);
  std::vector<std::uint8_t> got;
  // Uneven request sizes exercise the pending buffer.
  for (std::size_t chunk : {1u, 7u, 64u, 3u, 200u, 1000u, 5u}) {
    std::vector<std::uint8_t> part(chunk);
    gen.next_bits(part, 1ULL << 20);
    got.insert(got.end(), part.begin(), part.end());
  }
  ASSERT_LE(got.size(), batch.size());
  for (std::size_t i = 0; i < got.size(); ++i) ASSERT_EQ(got[i], batch[i]) << i;
}

TEST(KeystreamTest, SsgPeriodLowerBound) {
  for (std::size_t degree = 3; degree <= 12; ++degree) {
    const LfsrConfig c = small_config(degree, 1);
    const std::size_t full = (1ULL << degree) - 1;
    const auto out = self_shrink(lfsr_stream(c, 8 * full)).bits;
    const std::size_t p = smallest_period(out);
    EXPECT_GE(p, 1ULL << (degree / 2)) << "degree " << degree;
    // One traversal of all pairs: 2 (2^L - 1) register bits give 2^(L-1)
    // output bits, so the period divides 2^(L-1).
    EXPECT_EQ((1ULL << (degree - 1)) % p, 0u) << "degree " << degree;
  }
}

TEST(KeystreamTest, StatsOfKnownSequences) {
  BipolarStream s;
  s.symbols = {1, -1, 1, -1, 1, -1};
  const KeystreamStats st = keystream_stats(s);
  EXPECT_DOUBLE_EQ(st.balance, 0.0);
  EXPECT_EQ(st.period_lower_bound, 2u);
  s.symbols = {1, 1, 1, -1};
  EXPECT_DOUBLE_EQ(keystream_stats(s).balance, 0.5);
  s.symbols.assign(8, 1);
  EXPECT_DOUBLE_EQ(keystream_stats(s).balance, 1.0);
  EXPECT_EQ(keystream_stats(s).period_lower_bound, 1u);
}

TEST(KeystreamTest, DegreeTenSsgPeriod) {
  const auto s = bipolar(self_shrink(lfsr_stream(small_config(10, 0x155), 8192)));
  EXPECT_GE(keystream_stats(s).period_lower_bound, 32u);
}

TEST(KeystreamTest, SsgMatrixMeanVanishes) {
  auto source = SecretMatrixSource::make(SecretMode::kSsg, 1234);
  double total = 0.0;
  const int reps = 20;
  for (int r = 0; r < reps; ++r) {
    const SecretMatrix m = source.next(64, 64);
    double sum = 0.0;
    for (auto e : m.entries()) sum += e;
    total += std::abs(sum) / 4096.0;
  }
  // Mean absolute entry mean is about 0.8 / sqrt(MN).
  EXPECT_LT(total / reps, 3.0 / std::sqrt(4096.0));
}

TEST(KeystreamTest, FillTwoByTwo) {
  BipolarStream s;
  s.symbols = {1, -1, 1, -1};
  const SecretMatrix m = fill_secret_matrix(s, 2, 2);
  EXPECT_EQ(m(0, 0), 1);
  EXPECT_EQ(m(0, 1), -1);
  EXPECT_EQ(m(1, 0), 1);
  EXPECT_EQ(m(1, 1), -1);
}

TEST(KeystreamTest, DefaultKeystreamIsBalanced) {
  const auto s = bipolar(self_shrink(lfsr_stream(default_lfsr_config(3), 400000)));
  const double n = static_cast<double>(s.symbols.size());
  EXPECT_LT(keystream_stats(s).balance, 5.0 / std::sqrt(n));
}

TEST(KeystreamTest, ValidationRejectsBadConfigs) {
  LfsrConfig zero = small_config(8, 0);
  EXPECT_THROW(zero.validate(), std::invalid_argument);
  LfsrConfig bad_tap = small_config(8, 1);
  bad_tap.feedback_taps = {0, 8};
  EXPECT_THROW(bad_tap.validate(), std::invalid_argument);
  LfsrConfig no_zero_tap = small_config(8, 1);
  no_zero_tap.feedback_taps = {2, 3};
  EXPECT_THROW(no_zero_tap.validate(), std::invalid_argument);
  LfsrConfig short_state = small_config(8, 1);
  short_state.initial_state.pop_back();
  EXPECT_THROW(short_state.validate(), std::invalid_argument);
}

TEST(KeystreamTest, HexParsing) {
  EXPECT_EQ(parse_hex_bits("0x6", 4), (std::vector<std::uint8_t>{0, 1, 1, 0}));
  EXPECT_EQ(parse_hex_bits("1", 3), (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_THROW(parse_hex_bits("10", 4), std::invalid_argument);
  EXPECT_THROW(parse_hex_bits("xyz", 8), std::invalid_argument);
  EXPECT_EQ(taps_from_mask("0x87", 128), (std::vector<std::size_t>{0, 1, 2, 7}));
}

TEST(KeystreamTest, FillSecretMatrixConsumesRowMajor) {
  BitSequence b;
  b.bits = {0, 1, 1, 0, 1, 1, 0};
  BipolarStream s = bipolar(b);
  const SecretMatrix m = fill_secret_matrix(s, 2, 3);
  EXPECT_EQ(m(0, 0), 1);
  EXPECT_EQ(m(0, 1), -1);
  EXPECT_EQ(m(1, 0), 1);
  EXPECT_EQ(m(1, 2), -1);
  EXPECT_EQ(s.consumed, 6u);
  EXPECT_THROW(fill_secret_matrix(s, 1, 2), KeystreamExhausted);
}

TEST(KeystreamTest, SecretMatrixRejectsNonSigns) {
  EXPECT_THROW(SecretMatrix(1, 2, {1, 0}, SecretMode::kSsg), std::invalid_argument);
  EXPECT_THROW(SecretMatrix(2, 2, {1, 1, 1}, SecretMode::kSsg),
               std::invalid_argument);
}

TEST(KeystreamTest, SourceIsDeterministicAndSequential) {
  for (SecretMode mode : {SecretMode::kSsg, SecretMode::kBernoulli}) {
    auto a = SecretMatrixSource::make(mode, 77);
    auto b = SecretMatrixSource::make(mode, 77);
    const SecretMatrix a1 = a.next(8, 32);
    const SecretMatrix a2 = a.next(8, 32);
    const SecretMatrix b1 = b.next(8, 32);
    EXPECT_TRUE(std::equal(a1.entries().begin(), a1.entries().end(),
                           b1.entries().begin()));
    EXPECT_FALSE(std::equal(a1.entries().begin(), a1.entries().end(),
                            a2.entries().begin()));
    EXPECT_EQ(a1.generation(), mode);
  }
}

TEST(KeystreamTest, SsgSourceSlicesOneStream) {
  const LfsrConfig c = default_lfsr_config(21);
  auto source = SecretMatrixSource::ssg(c);
  const SecretMatrix m1 = source.next(4, 16);
  const SecretMatrix m2 = source.next(4, 16);
  const auto expected = bipolar(self_shrink(lfsr_stream(c, 2000))).symbols;
  ASSERT_GE(expected.size(), 128u);
  for (std::size_t i = 0; i < 64; ++i) {
    EXPECT_EQ(m1.entries()[i], expected[i]);
    EXPECT_EQ(m2.entries()[i], expected[64 + i]);
  }
}

TEST(KeystreamTest, RekeyedSourceDiffersFromSequential) {
  const LfsrConfig c = default_lfsr_config(21);
  KeystreamOptions rekey;
  rekey.rekey_per_encryption = true;
  auto sequential = SecretMatrixSource::ssg(c);
  auto rekeyed = SecretMatrixSource::ssg(c, rekey);
  auto rekeyed_again = SecretMatrixSource::ssg(c, rekey);
  const SecretMatrix s1 = sequential.next(4, 16);
  const SecretMatrix r1 = rekeyed.next(4, 16);
  (void)rekeyed_again.next(4, 16);
  EXPECT_TRUE(std::equal(s1.entries().begin(), s1.entries().end(),
                         r1.entries().begin()));
  const SecretMatrix s2 = sequential.next(4, 16);
  const SecretMatrix r2 = rekeyed.next(4, 16);
  const SecretMatrix q2 = rekeyed_again.next(4, 16);
  EXPECT_FALSE(std::equal(s2.entries().begin(), s2.entries().end(),
                          r2.entries().begin()));
  EXPECT_TRUE(std::equal(r2.entries().begin(), r2.entries().end(),
                         q2.entries().begin()));
}

TEST(KeystreamTest, RawCapTriggersExhaustion) {
  SelfShrinkingGenerator gen(default_lfsr_config(4));
  std::vector<std::uint8_t> out(1000);
  EXPECT_THROW(gen.next_bits(out, 1000), KeystreamExhausted);
}

TEST(KeystreamTest, ModeNames) {
  EXPECT_EQ(secret_mode_from_string("ssg"), SecretMode::kSsg);
  EXPECT_EQ(secret_mode_from_string("bernoulli"), SecretMode::kBernoulli);
  EXPECT_EQ(to_string(SecretMode::kBernoulli), "bernoulli");
  EXPECT_THROW(secret_mode_from_string("gauss"), std::invalid_argument);
}

}  // namespace
}  // namespace agots
