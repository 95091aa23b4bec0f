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

#ifndef MASO_ORACLE_HPP
#define MASO_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "maso/common.hpp"
#include "maso/family.hpp"
#include "maso/instance.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

inline constexpr std::uint64_t kBruteForceAssignmentCap = 10000000;  // (k+1)^n
inline constexpr int kBruteForceSetCap = 20;                         // 2^n scan

struct BruteForceResult {
  bool feasible = false;
  double value = 0.0;
  Allocation allocation;
};

struct BruteForceSetResult {
  bool feasible = false;
  double value = 0.0;
  Set set = 0;
};

// Exact optimum by enumerating every assignment of each element to
// {unassigned, agent 1..k} as a mixed-radix little-endian code (element 0 is
// the least significant digit). First strict improvement wins, so ties break
// lexicographically in code order.
inline BruteForceResult brute_force_maso(const MasoInstance& inst) {
  const int n = inst.n();
  const int k = inst.k;
  std::uint64_t count = 1;
  for (int v = 0; v < n; ++v) {
    count *= static_cast<std::uint64_t>(k + 1);
    if (count > kBruteForceAssignmentCap)
      throw CapacityError("brute force capped at (k+1)^n <= 1e7");
  }

  BruteForceResult best;
  std::vector<int> digits(n, 0);
  Allocation alloc(k);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (int v = 0; v < n; ++v) {
      digits[v] = static_cast<int>(rest % (k + 1));
      rest /= (k + 1);
    }
    for (int i = 0; i < k; ++i) alloc.parts[i] = 0;
    for (int v = 0; v < n; ++v)
      if (digits[v] > 0) alloc.parts[digits[v] - 1] = with(alloc.parts[digits[v] - 1], v);
    if (!inst.allocation_feasible(alloc)) continue;
    double value = inst.allocation_value(alloc);
    bool better = !best.feasible ||
                  (inst.sense == Sense::kMin ? value < best.value : value > best.value);
    if (better) {
      best.feasible = true;
      best.value = value;
      best.allocation = alloc;
    }
  }
  return best;
}

inline BruteForceSetResult brute_force_so(const ValueOracle& f,
                                          const FeasibleFamily& fam, Sense sense) {
  if (f.n() != fam.n()) throw PreconditionError("oracle and family ground sets differ");
  if (f.n() > kBruteForceSetCap)
    throw CapacityError("set brute force capped at n <= 20");
  BruteForceSetResult best;
  const Set top = full_mask(f.n());
  for (Set s = 0;; ++s) {
    if (fam.contains(s)) {
      double value = f(s);
      bool better = !best.feasible ||
                    (sense == Sense::kMin ? value < best.value : value > best.value);
      if (better) {
        best.feasible = true;
        best.value = value;
        best.set = s;
      }
    }
    if (s == top) break;
  }
  return best;
}

struct Certificate {
  double opt_value = 0.0;
  Allocation opt_allocation;
  double algo_value = 0.0;
  double ratio = 0.0;  // algo/opt, >= 1 for min and <= 1 for max
  bool feasible = false;
  bool ratio_defined = false;
  bool zero_optimum = false;
};

// Re-derives feasibility and value of the candidate allocation independently
// of whatever the algorithm reported, then compares against the exact
// optimum. Zero-optimum instances are flagged instead of dividing.
inline Certificate certify(const MasoInstance& inst, const Allocation& candidate) {
  BruteForceResult opt = brute_force_maso(inst);
  if (!opt.feasible) throw InfeasibleError("instance has no feasible allocation");
  Certificate cert;
  cert.opt_value = opt.value;
  cert.opt_allocation = opt.allocation;
  cert.feasible = inst.allocation_feasible(candidate);
  cert.algo_value = inst.allocation_value(candidate);
  cert.zero_optimum = std::fabs(opt.value) <= kTol;
  if (cert.feasible && !cert.zero_optimum) {
    cert.ratio = cert.algo_value / cert.opt_value;
    cert.ratio_defined = true;
  }
  return cert;
}

}  // namespace maso

#endif  // MASO_ORACLE_HPP
