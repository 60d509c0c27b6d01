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

// LFSR-based keystream generation and the secret sign matrix S.
//
// Register convention (Fibonacci): stage i holds a_{t+i}. Each clock emits
// stage 0 and shifts in a_{t+L} = XOR of the tapped stages, so the tap set
// {i : c_i = 1} realizes the recurrence polynomial
// x^L + sum_{i in taps} x^i. Self-shrinking pairs are (a_{2i}, a_{2i+1})
// counted from the first emitted bit.

#ifndef AGOTS_KEYSTREAM_H_
#define AGOTS_KEYSTREAM_H_

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace agots {

class KeystreamExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LfsrConfig {
  std::size_t degree = 0;
  std::vector<std::size_t> feedback_taps;
  // Bit i seeds stage i. This is the secret key.
  std::vector<std::uint8_t> initial_state;
  // When set, construction verifies the m-sequence period by brute force
  // for degree <= kMaxVerifiedDegree.
  bool claims_m_sequence = false;

  static constexpr std::size_t kMaxVerifiedDegree = 24;

  // Throws std::invalid_argument on malformed taps/state.
  void validate() const;
};

struct PrimitivePolynomial {
  std::size_t degree;
  std::vector<std::size_t> taps;
};

// Pinned primitive polynomials, one per degree 2..16 (verified by the test
// suite), followed by the degree-128 default x^128 + x^7 + x^2 + x + 1.
std::span<const PrimitivePolynomial> primitive_polynomials();
const PrimitivePolynomial& primitive_polynomial(std::size_t degree);

// Degree-128 pentanomial register, state expanded from a 64-bit key.
LfsrConfig default_lfsr_config(std::uint64_t key);
// Register for any pinned degree with the state expanded from `key`.
LfsrConfig lfsr_config_for_degree(std::size_t degree, std::uint64_t key);

// Parses a hex string (optional 0x prefix) into `width` bits, LSB first.
// Throws std::invalid_argument if the value does not fit.
std::vector<std::uint8_t> parse_hex_bits(std::string_view hex,
                                         std::size_t width);
std::vector<std::size_t> taps_from_mask(std::string_view hex,
                                        std::size_t degree);

enum class SourceKind { kMSequence, kSsgOutput };

struct BitSequence {
  std::vector<std::uint8_t> bits;
  SourceKind source_kind = SourceKind::kMSequence;
};

struct BipolarStream {
  std::vector<std::int8_t> symbols;
  // Read cursor used by fill_secret_matrix.
  std::size_t consumed = 0;

  std::size_t remaining() const { return symbols.size() - consumed; }
};

class Lfsr {
 public:
  explicit Lfsr(const LfsrConfig& config);

  std::uint8_t next_bit();
  // Next 64 output bits, bit j holding the j-th one.
  std::uint64_t next_word();
  std::vector<std::uint8_t> state() const;
  std::size_t degree() const { return degree_; }
  // True when next_word() advances 64 stages with word operations.
  bool word_parallel() const { return word_parallel_; }

 private:
  std::uint64_t window(std::size_t offset) const;

  std::size_t degree_;
  std::vector<std::size_t> taps_;
  std::vector<std::uint64_t> tap_mask_;
  std::vector<std::uint64_t> words_;
  bool word_parallel_ = false;
};

// Brute-force period of the state sequence; returns nullopt if the state
// has not recurred after 2^degree steps.
std::optional<std::uint64_t> lfsr_period(const LfsrConfig& config);

BitSequence lfsr_stream(const LfsrConfig& config, std::size_t count);
BitSequence self_shrink(const BitSequence& a);
BipolarStream bipolar(const BitSequence& b);

struct KeystreamStats {
  double balance = 0.0;
  std::size_t period_lower_bound = 0;
};
KeystreamStats keystream_stats(const BipolarStream& s);

// Streaming self-shrinking generator over an Lfsr.
class SelfShrinkingGenerator {
 public:
  explicit SelfShrinkingGenerator(const LfsrConfig& config);

  // Writes out.size() output bits. Throws KeystreamExhausted when more than
  // `raw_bit_cap` register bits would be needed for this request.
  void next_bits(std::span<std::uint8_t> out, std::uint64_t raw_bit_cap);
  std::uint64_t raw_bits_consumed() const { return raw_consumed_; }

 private:
  Lfsr lfsr_;
  std::uint64_t pending_ = 0;
  int pending_count_ = 0;
  std::uint64_t raw_consumed_ = 0;
};

enum class SecretMode { kSsg, kBernoulli };

std::string_view to_string(SecretMode mode);
SecretMode secret_mode_from_string(std::string_view name);

// M x N matrix of +-1, row-major.
class SecretMatrix {
 public:
  SecretMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::int8_t> entries, SecretMode generation);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  SecretMode generation() const { return generation_; }
  std::int8_t operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  std::span<const std::int8_t> entries() const { return entries_; }

  Eigen::MatrixXd dense() const;
  // S * z without forming a floating-point copy of S.
  Eigen::VectorXd multiply(const Eigen::VectorXd& z) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int8_t> entries_;
  SecretMode generation_;
};

// Row-major fill from the stream cursor; advances the cursor by M*N.
SecretMatrix fill_secret_matrix(BipolarStream& stream, std::size_t rows,
                                std::size_t cols);

struct KeystreamOptions {
  // Raw register bits allowed per matrix, as a multiple of M*N.
  std::uint64_t raw_cap_factor = 64;
  // Re-seed the register per matrix instead of consuming one long stream.
  bool rekey_per_encryption = false;
};

// Produces a fresh secret matrix per call (one-time sensing). In ssg mode
// the matrices are successive slices of a single keystream.
class SecretMatrixSource {
 public:
  static SecretMatrixSource ssg(const LfsrConfig& config,
                                KeystreamOptions options = {});
  static SecretMatrixSource bernoulli(std::uint64_t seed);
  static SecretMatrixSource make(SecretMode mode, std::uint64_t key,
                                 KeystreamOptions options = {});

  SecretMatrix next(std::size_t rows, std::size_t cols);
  SecretMode mode() const { return mode_; }

 private:
  SecretMatrixSource(SecretMode mode, LfsrConfig config,
                     KeystreamOptions options, std::uint64_t seed);

  SecretMode mode_;
  LfsrConfig config_;
  KeystreamOptions options_;
  std::optional<SelfShrinkingGenerator> ssg_;
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::vector<std::uint8_t> scratch_;
};

}  // namespace agots

#endif  // AGOTS_KEYSTREAM_H_
