/*
 * Copyright 2026 The ttdfair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TTDFAIR_RNG_HPP
#define TTDFAIR_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ttdfair {

// All randomness in the toolkit flows from one root seed. Sub-streams are
// derived as derive_seed(root, tag, index) so that each consumer (phenotype,
// bootstrap resample, synthetic patient, ...) owns an independent,
// reproducible stream. The samplers below are fixed algorithms rather than
// std::*_distribution, so a given seed yields the same draws on every
// standard library implementation.

std::uint64_t fnv1a64(std::string_view data);
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                          std::uint64_t index = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Unbiased uniform draw from [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Uniform double in [0, 1) with 53 bits of randomness.
  double uniform01();

  /// Standard normal via Box-Muller.
  double normal();
  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  /// Normal draw rejected until it lands in [lo, hi].
  double truncated_normal(double mean, double sigma, double lo, double hi);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ttdfair

#endif  // TTDFAIR_RNG_HPP
