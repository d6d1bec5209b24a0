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

#include "ttdfair/rng.hpp"

#include <cmath>

#include "ttdfair/errors.hpp"

namespace ttdfair {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                          std::uint64_t index) {
  std::uint64_t h = splitmix64(root ^ fnv1a64(tag));
  return splitmix64(h ^ splitmix64(index + 0x2545f4914f6cdd1dULL));
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n == 0) throw ArgumentError("uniform_below: n must be positive");
  // Reject the low sliver that would bias the modulo.
  std::uint64_t limit = (0 - n) % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x < limit);
  return x % n;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform01();  // (0, 1]
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

double Rng::truncated_normal(double mean, double sigma, double lo, double hi) {
  if (!(lo <= hi)) throw ArgumentError("truncated_normal: empty interval");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    double x = normal(mean, sigma);
    if (x >= lo && x <= hi) return x;
  }
  // Unreachable in practice when [lo, hi] has non-trivial mass.
  return mean < lo ? lo : (mean > hi ? hi : mean);
}

}  // namespace ttdfair
