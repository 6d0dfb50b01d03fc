// Copyright 2026 The Strata Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Small self-contained PRNG utilities. Everything here is a pure function of
// its seed/counter arguments, so random streams reproduce bit-exactly across
// platforms and thread schedules (the standard <random> distributions do not
// guarantee that).

#pragma once

#include <cmath>
#include <cstdint>

namespace strata {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed, e.g. one per restart.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x51ED2701u));
}

/// Maps 64 random bits to [0, 1).
inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential splitmix64 generator.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return splitmix64(state_++); }
  double uniform01() { return unit_double(next()); }

  /// Uniform index in [0, n). n must be >= 1.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

 private:
  std::uint64_t state_;
};

/// Counter-based standard normal: a pure function of (seed, counter), so
/// per-sample noise is independent of evaluation order and thread count.
inline double counter_normal(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64(counter));
  const std::uint64_t a = splitmix64(h);
  const std::uint64_t b = splitmix64(h + 0x9E3779B97F4A7C15ull);
  // u1 in (0, 1] keeps the log finite.
  const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = unit_double(b);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

}  // namespace strata
