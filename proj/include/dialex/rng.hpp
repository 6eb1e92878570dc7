// Copyright 2026 the dialex authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace dialex {

/// Identifier recorded in model files; changing the generator breaks
/// reproducibility and must bump this name.
inline constexpr std::string_view kRngName = "splitmix64+mt19937_64";

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic RNG substream keyed by (seed, stream). Substream seeds are
/// derived with splitmix64; draws come from std::mt19937_64, whose output
/// sequence is pinned by the standard. Bounded draws use rejection sampling
/// (std::uniform_int_distribution is implementation-defined and avoided).
class SplitRng {
 public:
  SplitRng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s);
    s = mixed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    engine_.seed(splitmix64(s));
  }

  std::uint64_t next() { return engine_(); }

  /// Unbiased draw from [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t rem = (-bound) % bound;  // 2^64 mod bound
    std::uint64_t r = next();
    while (r < rem) r = next();
    return r % bound;
  }

  template <class RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const std::uint64_t j = below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

  /// k distinct indices from [0, n), returned in ascending order.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k);

 private:
  std::mt19937_64 engine_;
};

inline std::vector<std::uint32_t> SplitRng::sample_without_replacement(std::uint32_t n,
                                                                       std::uint32_t k) {
  std::vector<std::uint32_t> idx(n);
  for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
  if (k > n) k = n;
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + below(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace dialex
