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

// Seeded counter-based random numbers. Every experiment draws from these so
// that results replay bit-for-bit on any platform.

#ifndef AGOTS_RNG_H_
#define AGOTS_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>

namespace agots {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// Derives an independent stream key from a master seed and a path of
// indices, e.g. derive_seed(master, {grid_index, trial_index}).
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path);

// Counter-mode generator: the i-th output is mix64(key + i * golden).
// Cheap to construct, so one instance per trial is the normal usage.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_zero();
  // Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  // Standard normal via Box-Muller; the second variate of each pair is
  // cached and returned by the next call.
  double gaussian();
  bool coin() { return (next_u64() >> 63) != 0; }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace agots

#endif  // AGOTS_RNG_H_
