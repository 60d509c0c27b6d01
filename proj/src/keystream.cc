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

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <utility>

#include "agots/rng.h"

namespace agots {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// One byte of raw bits is four (control, output) pairs. Entry packs the
// surviving output bits in the low nibble and their count in bits 4..6.
constexpr std::array<std::uint8_t, 256> make_shrink_table() {
  std::array<std::uint8_t, 256> table{};
  for (unsigned byte = 0; byte < 256; ++byte) {
    unsigned out = 0;
    unsigned count = 0;
    for (unsigned pair = 0; pair < 4; ++pair) {
      const unsigned control = (byte >> (2 * pair)) & 1U;
      const unsigned value = (byte >> (2 * pair + 1)) & 1U;
      if (control != 0) {
        out |= value << count;
        ++count;
      }
    }
    table[byte] = static_cast<std::uint8_t>(out | (count << 4));
  }
  return table;
}

constexpr auto kShrinkTable = make_shrink_table();

std::vector<std::uint8_t> expand_state(std::size_t degree,
                                       std::uint64_t key) {
  std::vector<std::uint8_t> bits(degree);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < degree; ++i) {
    if (i % kWordBits == 0) word = derive_seed(key, {i / kWordBits});
    bits[i] = static_cast<std::uint8_t>((word >> (i % kWordBits)) & 1U);
  }
  if (std::none_of(bits.begin(), bits.end(), [](auto b) { return b != 0; })) {
    bits[0] = 1;
  }
  return bits;
}

std::uint64_t hash_state(const std::vector<std::uint8_t>& bits) {
  std::uint64_t h = 0;
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    word |= static_cast<std::uint64_t>(bits[i] & 1U) << (i % kWordBits);
    if (i % kWordBits == kWordBits - 1 || i + 1 == bits.size()) {
      h = mix64(h ^ mix64(word + i));
      word = 0;
    }
  }
  return h;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower >= 'a' && lower <= 'f') return lower - 'a' + 10;
  return -1;
}

}  // namespace

void LfsrConfig::validate() const {
  if (degree == 0) throw std::invalid_argument("lfsr: degree must be >= 1");
  if (feedback_taps.empty()) {
    throw std::invalid_argument("lfsr: at least one feedback tap is required");
  }
  for (std::size_t t : feedback_taps) {
    if (t >= degree) {
      throw std::invalid_argument("lfsr: tap " + std::to_string(t) +
                                  " outside [0, degree)");
    }
  }
  if (std::find(feedback_taps.begin(), feedback_taps.end(), 0) ==
      feedback_taps.end()) {
    // Without the constant term the state map is not invertible.
    throw std::invalid_argument("lfsr: stage 0 must be tapped");
  }
  if (initial_state.size() != degree) {
    throw std::invalid_argument("lfsr: initial state must have degree bits");
  }
  if (std::none_of(initial_state.begin(), initial_state.end(),
                   [](std::uint8_t b) { return (b & 1U) != 0; })) {
    throw std::invalid_argument("lfsr: all-zero initial state");
  }
}

std::span<const PrimitivePolynomial> primitive_polynomials() {
  static const std::vector<PrimitivePolynomial> table = {
      {2, {0, 1}},          // x^2 + x + 1
      {3, {0, 1}},          // x^3 + x + 1
      {4, {0, 1}},          // x^4 + x + 1
      {5, {0, 2}},          // x^5 + x^2 + 1
      {6, {0, 1}},          // x^6 + x + 1
      {7, {0, 1}},          // x^7 + x + 1
      {8, {0, 2, 3, 4}},    // x^8 + x^4 + x^3 + x^2 + 1
      {9, {0, 4}},          // x^9 + x^4 + 1
      {10, {0, 3}},         // x^10 + x^3 + 1
      {11, {0, 2}},         // x^11 + x^2 + 1
      {12, {0, 1, 4, 6}},   // x^12 + x^6 + x^4 + x + 1
      {13, {0, 1, 3, 4}},   // x^13 + x^4 + x^3 + x + 1
      {14, {0, 1, 6, 10}},  // x^14 + x^10 + x^6 + x + 1
      {15, {0, 1}},         // x^15 + x + 1
      {16, {0, 1, 3, 12}},  // x^16 + x^12 + x^3 + x + 1
      // Primitivity of the degree-128 default is documented, not checked.
      {128, {0, 1, 2, 7}},  // x^128 + x^7 + x^2 + x + 1
  };
  return table;
}

const PrimitivePolynomial& primitive_polynomial(std::size_t degree) {
  for (const auto& p : primitive_polynomials()) {
    if (p.degree == degree) return p;
  }
  throw std::invalid_argument("no pinned primitive polynomial of degree " +
                              std::to_string(degree));
}

LfsrConfig lfsr_config_for_degree(std::size_t degree, std::uint64_t key) {
  const auto& poly = primitive_polynomial(degree);
  LfsrConfig config;
  config.degree = degree;
  config.feedback_taps = poly.taps;
  config.initial_state = expand_state(degree, key);
  return config;
}

LfsrConfig default_lfsr_config(std::uint64_t key) {
  return lfsr_config_for_degree(128, key);
}

std::vector<std::uint8_t> parse_hex_bits(std::string_view hex,
                                         std::size_t width) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw std::invalid_argument("empty hex string");
  std::vector<std::uint8_t> bits(width, 0);
  std::size_t position = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, position += 4) {
    const int digit = hex_digit(*it);
    if (digit < 0) {
      throw std::invalid_argument("invalid hex digit in '" + std::string(hex) +
                                  "'");
    }
    for (int b = 0; b < 4; ++b) {
      if (((digit >> b) & 1) == 0) continue;
      if (position + b >= width) {
        throw std::invalid_argument("hex value '" + std::string(hex) +
                                    "' wider than " + std::to_string(width) +
                                    " bits");
      }
      bits[position + b] = 1;
    }
  }
  return bits;
}

std::vector<std::size_t> taps_from_mask(std::string_view hex,
                                        std::size_t degree) {
  const auto bits = parse_hex_bits(hex, degree);
  std::vector<std::size_t> taps;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) taps.push_back(i);
  }
  return taps;
}

Lfsr::Lfsr(const LfsrConfig& config)
    : degree_(config.degree), taps_(config.feedback_taps) {
  config.validate();
  std::sort(taps_.begin(), taps_.end());
  taps_.erase(std::unique(taps_.begin(), taps_.end()), taps_.end());
  words_.assign(words_for(degree_), 0);
  tap_mask_.assign(words_.size(), 0);
  for (std::size_t i = 0; i < degree_; ++i) {
    if (config.initial_state[i] & 1U) {
      words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
    }
  }
  for (std::size_t t : taps_) {
    tap_mask_[t / kWordBits] |= std::uint64_t{1} << (t % kWordBits);
  }
  // 64 new stages depend only on known stages iff max tap + 64 <= degree.
  word_parallel_ = taps_.back() + kWordBits <= degree_;
  if (config.claims_m_sequence && degree_ <= LfsrConfig::kMaxVerifiedDegree) {
    const auto period = lfsr_period(config);
    if (!period || *period != (std::uint64_t{1} << degree_) - 1) {
      throw std::invalid_argument(
          "lfsr: feedback polynomial is not primitive (period check failed)");
    }
  }
}

std::uint8_t Lfsr::next_bit() {
  const auto out = static_cast<std::uint8_t>(words_[0] & 1U);
  unsigned parity = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    parity ^= static_cast<unsigned>(std::popcount(words_[w] & tap_mask_[w]));
  }
  for (std::size_t w = 0; w + 1 < words_.size(); ++w) {
    words_[w] = (words_[w] >> 1) | (words_[w + 1] << 63);
  }
  words_.back() >>= 1;
  if (parity & 1U) {
    const std::size_t top = degree_ - 1;
    words_[top / kWordBits] |= std::uint64_t{1} << (top % kWordBits);
  }
  return out;
}

std::uint64_t Lfsr::window(std::size_t offset) const {
  const std::size_t w = offset / kWordBits;
  const std::size_t b = offset % kWordBits;
  if (b == 0) return words_[w];
  return (words_[w] >> b) | (words_[w + 1] << (kWordBits - b));
}

std::uint64_t Lfsr::next_word() {
  if (!word_parallel_) {
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < kWordBits; ++j) {
      out |= static_cast<std::uint64_t>(next_bit()) << j;
    }
    return out;
  }
  const std::uint64_t out = words_[0];
  std::uint64_t fresh = 0;
  for (std::size_t t : taps_) fresh ^= window(t);
  for (std::size_t w = 0; w + 1 < words_.size(); ++w) words_[w] = words_[w + 1];
  words_.back() = 0;
  const std::size_t at = degree_ - kWordBits;
  const std::size_t w = at / kWordBits;
  const std::size_t b = at % kWordBits;
  words_[w] |= fresh << b;
  if (b != 0) words_[w + 1] |= fresh >> (kWordBits - b);
  return out;
}

std::vector<std::uint8_t> Lfsr::state() const {
  std::vector<std::uint8_t> bits(degree_);
  for (std::size_t i = 0; i < degree_; ++i) {
    bits[i] = static_cast<std::uint8_t>((words_[i / kWordBits] >> (i % kWordBits)) & 1U);
  }
  return bits;
}

std::optional<std::uint64_t> lfsr_period(const LfsrConfig& config) {
  LfsrConfig plain = config;
  plain.claims_m_sequence = false;
  Lfsr lfsr(plain);
  const auto start = lfsr.state();
  const std::uint64_t limit =
      config.degree >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << config.degree);
  for (std::uint64_t step = 1; step <= limit; ++step) {
    lfsr.next_bit();
    if (lfsr.state() == start) return step;
  }
  return std::nullopt;
}

BitSequence lfsr_stream(const LfsrConfig& config, std::size_t count) {
  Lfsr lfsr(config);
  BitSequence seq;
  seq.source_kind = SourceKind::kMSequence;
  seq.bits.reserve(count);
  for (std::size_t i = 0; i < count; ++i) seq.bits.push_back(lfsr.next_bit());
  return seq;
}

BitSequence self_shrink(const BitSequence& a) {
  BitSequence b;
  b.source_kind = SourceKind::kSsgOutput;
  for (std::size_t i = 0; i + 1 < a.bits.size(); i += 2) {
    if (a.bits[i] != 0) b.bits.push_back(a.bits[i + 1]);
  }
  return b;
}

BipolarStream bipolar(const BitSequence& b) {
  BipolarStream s;
  s.symbols.reserve(b.bits.size());
  for (std::uint8_t bit : b.bits) {
    s.symbols.push_back(bit != 0 ? std::int8_t{-1} : std::int8_t{1});
  }
  return s;
}

KeystreamStats keystream_stats(const BipolarStream& s) {
  KeystreamStats stats;
  const std::size_t n = s.symbols.size();
  if (n == 0) return stats;
  long long sum = 0;
  for (auto v : s.symbols) sum += v;
  stats.balance = static_cast<double>(std::llabs(sum)) / static_cast<double>(n);
  stats.period_lower_bound = n;
  for (std::size_t p = 1; p < n; ++p) {
    bool periodic = true;
    for (std::size_t t = 0; t + p < n; ++t) {
      if (s.symbols[t] != s.symbols[t + p]) {
        periodic = false;
        break;
      }
    }
    if (periodic) {
      stats.period_lower_bound = p;
      break;
    }
  }
  return stats;
}

SelfShrinkingGenerator::SelfShrinkingGenerator(const LfsrConfig& config)
    : lfsr_(config) {}

void SelfShrinkingGenerator::next_bits(std::span<std::uint8_t> out,
                                       std::uint64_t raw_bit_cap) {
  std::size_t filled = 0;
  std::uint64_t raw_this_call = 0;
  while (filled < out.size()) {
    while (pending_count_ > 0 && filled < out.size()) {
      out[filled++] = static_cast<std::uint8_t>(pending_ & 1U);
      pending_ >>= 1;
      --pending_count_;
    }
    if (filled == out.size()) break;
    if (raw_this_call + kWordBits > raw_bit_cap) {
      throw KeystreamExhausted(
          "keystream exhausted: self-shrinking output needs more than " +
          std::to_string(raw_bit_cap) + " register bits");
    }
    std::uint64_t raw = lfsr_.next_word();
    raw_this_call += kWordBits;
    raw_consumed_ += kWordBits;
    for (int byte = 0; byte < 8; ++byte, raw >>= 8) {
      const std::uint8_t entry = kShrinkTable[raw & 0xFFU];
      const int count = entry >> 4;
      pending_ |= static_cast<std::uint64_t>(entry & 0x0FU) << pending_count_;
      pending_count_ += count;
    }
  }
}

std::string_view to_string(SecretMode mode) {
  return mode == SecretMode::kSsg ? "ssg" : "bernoulli";
}

SecretMode secret_mode_from_string(std::string_view name) {
  if (name == "ssg") return SecretMode::kSsg;
  if (name == "bernoulli") return SecretMode::kBernoulli;
  throw std::invalid_argument("unknown secret matrix mode '" +
                              std::string(name) + "' (expected ssg|bernoulli)");
}

SecretMatrix::SecretMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::int8_t> entries,
                           SecretMode generation)
    : rows_(rows),
      cols_(cols),
      entries_(std::move(entries)),
      generation_(generation) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("secret matrix: entry count != rows * cols");
  }
  for (auto e : entries_) {
    if (e != 1 && e != -1) {
      throw std::invalid_argument("secret matrix entries must be +1 or -1");
    }
  }
}

Eigen::MatrixXd SecretMatrix::dense() const {
  Eigen::MatrixXd out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
  }
  return out;
}

Eigen::VectorXd SecretMatrix::multiply(const Eigen::VectorXd& z) const {
  if (static_cast<std::size_t>(z.size()) != cols_) {
    throw std::invalid_argument("secret matrix multiply: dimension mismatch");
  }
  Eigen::VectorXd out(rows_);
  const double* zp = z.data();
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::int8_t* row = entries_.data() + r * cols_;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * zp[c];
    out[static_cast<Eigen::Index>(r)] = acc;
  }
  return out;
}

SecretMatrix fill_secret_matrix(BipolarStream& stream, std::size_t rows,
                                std::size_t cols) {
  const std::size_t need = rows * cols;
  if (stream.consumed > stream.symbols.size() || stream.remaining() < need) {
    throw KeystreamExhausted("bipolar stream has " +
                             std::to_string(stream.remaining()) +
                             " symbols left, " + std::to_string(need) +
                             " required");
  }
  const auto first = stream.symbols.begin() +
                     static_cast<std::ptrdiff_t>(stream.consumed);
  std::vector<std::int8_t> entries(first,
                                   first + static_cast<std::ptrdiff_t>(need));
  stream.consumed += need;
  return SecretMatrix(rows, cols, std::move(entries), SecretMode::kSsg);
}

SecretMatrixSource::SecretMatrixSource(SecretMode mode, LfsrConfig config,
                                       KeystreamOptions options,
                                       std::uint64_t seed)
    : mode_(mode),
      config_(std::move(config)),
      options_(options),
      seed_(seed) {
  if (mode_ == SecretMode::kSsg) ssg_.emplace(config_);
}

SecretMatrixSource SecretMatrixSource::ssg(const LfsrConfig& config,
                                           KeystreamOptions options) {
  return SecretMatrixSource(SecretMode::kSsg, config, options,
                            hash_state(config.initial_state));
}

SecretMatrixSource SecretMatrixSource::bernoulli(std::uint64_t seed) {
  return SecretMatrixSource(SecretMode::kBernoulli, LfsrConfig{}, {}, seed);
}

SecretMatrixSource SecretMatrixSource::make(SecretMode mode, std::uint64_t key,
                                            KeystreamOptions options) {
  if (mode == SecretMode::kSsg) return ssg(default_lfsr_config(key), options);
  return bernoulli(key);
}

SecretMatrix SecretMatrixSource::next(std::size_t rows, std::size_t cols) {
  const std::size_t need = rows * cols;
  std::vector<std::int8_t> entries(need);
  if (mode_ == SecretMode::kBernoulli) {
    CounterRng rng(derive_seed(seed_, {draws_}));
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < need; ++i) {
      if (i % kWordBits == 0) word = rng.next_u64();
      entries[i] = ((word >> (i % kWordBits)) & 1U) ? std::int8_t{-1}
                                                     : std::int8_t{1};
    }
  } else {
    if (options_.rekey_per_encryption && draws_ > 0) {
      LfsrConfig rekeyed = config_;
      rekeyed.claims_m_sequence = false;
      rekeyed.initial_state =
          expand_state(config_.degree, derive_seed(seed_, {draws_}));
      ssg_.emplace(rekeyed);
    }
    scratch_.resize(need);
    const std::uint64_t cap =
        std::max<std::uint64_t>(options_.raw_cap_factor * need, kWordBits);
    ssg_->next_bits(scratch_, cap);
    for (std::size_t i = 0; i < need; ++i) {
      entries[i] = scratch_[i] != 0 ? std::int8_t{-1} : std::int8_t{1};
    }
  }
  ++draws_;
  return SecretMatrix(rows, cols, std::move(entries), mode_);
}

}  // namespace agots
