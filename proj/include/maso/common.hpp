// Copyright 2026 The Authors.
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

#ifndef MASO_COMMON_HPP
#define MASO_COMMON_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace maso {

// Error taxonomy. CLI maps these to process exit codes:
//   InfeasibleError -> 1, InvariantError -> 2,
//   PreconditionError / CapacityError (and parse errors) -> 3.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ground sets hold at most 64 elements so subsets pack into one word.
using Set = std::uint64_t;

inline constexpr int kMaxGround = 64;
inline constexpr double kTol = 1e-9;

inline Set full_mask(int n) {
  if (n < 0 || n > kMaxGround) throw CapacityError("ground set size out of range");
  return n == kMaxGround ? ~Set{0} : (Set{1} << n) - 1;
}

inline bool contains(Set s, int v) { return (s >> v) & Set{1}; }
inline Set with(Set s, int v) { return s | (Set{1} << v); }
inline Set without(Set s, int v) { return s & ~(Set{1} << v); }
inline int set_size(Set s) { return __builtin_popcountll(s); }

template <typename Fn>
void for_each_element(Set s, Fn fn) {
  while (s) {
    int v = __builtin_ctzll(s);
    fn(v);
    s &= s - 1;
  }
}

// Enumerates all subsets of mask, ascending as integers (so the empty set
// comes first and mask last).
template <typename Fn>
void for_each_subset(Set mask, Fn fn) {
  Set sub = 0;
  while (true) {
    fn(sub);
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;  // empty, or exactly n entries

  GroundSet() = default;
  explicit GroundSet(int n_in, std::vector<std::string> labels_in = {})
      : n(n_in), labels(std::move(labels_in)) {
    if (n < 1 || n > kMaxGround) throw CapacityError("ground set size out of range");
    if (!labels.empty()) {
      if (static_cast<int>(labels.size()) != n)
        throw PreconditionError("label count must match ground set size");
      auto sorted = labels;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionError("labels must be unique");
    }
  }

  Set universe() const { return full_mask(n); }

  std::string label(int v) const {
    if (v < 0 || v >= n) throw PreconditionError("element index out of range");
    return labels.empty() ? std::to_string(v) : labels[v];
  }
};

// Deterministic RNG. mt19937_64 has a standard-pinned sequence, so identical
// seeds replay identical runs across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]. Used where a zero draw would be degenerate.
  double uniform_open01() { return 1.0 - uniform01(); }

  // Uniform in {0, ..., m-1}, rejection-sampled so it is exactly uniform.
  int uniform_index(int m) {
    if (m <= 0) throw PreconditionError("uniform_index needs a positive range");
    const std::uint64_t um = static_cast<std::uint64_t>(m);
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % um);
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<int>(x % um);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace maso

#endif  // MASO_COMMON_HPP
