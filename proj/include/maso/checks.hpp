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

#ifndef MASO_CHECKS_HPP
#define MASO_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "maso/common.hpp"
#include "maso/family.hpp"
#include "maso/value_oracle.hpp"

namespace maso {

inline constexpr int kExhaustiveCheckCap = 14;
inline constexpr int kMatroidCheckCap = 16;

struct Verdict {
  bool ok = true;
  std::string detail;
  Set witness_a = 0;
  Set witness_b = 0;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string why, Set a = 0, Set b = 0) {
    return {false, std::move(why), a, b};
  }
  explicit operator bool() const { return ok; }
};

namespace detail {

inline std::string set_to_string(Set s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each_element(s, [&](int v) {
    if (!first) os << ',';
    os << v;
    first = false;
  });
  os << '}';
  return os.str();
}

inline std::vector<double> value_table(const ValueOracle& f, int cap,
                                       const char* what) {
  if (f.n() > cap)
    throw CapacityError(std::string(what) + " is exhaustive, capped at n <= " +
                        std::to_string(cap));
  const Set top = full_mask(f.n());
  std::vector<double> table(static_cast<size_t>(top) + 1);
  for (Set s = 0;; ++s) {
    table[s] = f(s);
    if (s == top) break;
  }
  return table;
}

inline std::vector<char> membership_table(const FeasibleFamily& fam, int cap,
                                          const char* what) {
  if (fam.n() > cap)
    throw CapacityError(std::string(what) + " is exhaustive, capped at n <= " +
                        std::to_string(cap));
  const Set top = full_mask(fam.n());
  std::vector<char> table(static_cast<size_t>(top) + 1);
  for (Set s = 0;; ++s) {
    table[s] = fam.contains(s) ? 1 : 0;
    if (s == top) break;
  }
  return table;
}

}  // namespace detail

// Exhaustive two-element characterization: f is submodular iff for all T and
// distinct u, v outside T, f(T+u+v) - f(T+u) <= f(T+v) - f(T).
inline Verdict check_submodular(const ValueOracle& f, double tol = kTol) {
  const int n = f.n();
  auto table = detail::value_table(f, kExhaustiveCheckCap, "check_submodular");
  const Set top = full_mask(n);
  for (Set t = 0;; ++t) {
    for (int u = 0; u < n; ++u) {
      if (contains(t, u)) continue;
      for (int v = u + 1; v < n; ++v) {
        if (contains(t, v)) continue;
        const double lhs = table[with(with(t, u), v)] - table[with(t, u)];
        const double rhs = table[with(t, v)] - table[t];
        // Violation in local form gives the pair witness (T+u, T+v).
        if (lhs > rhs + tol)
          return Verdict::fail("submodularity fails for S=" +
                                   detail::set_to_string(with(t, u)) + " T=" +
                                   detail::set_to_string(with(t, v)),
                               with(t, u), with(t, v));
      }
    }
    if (t == top) break;
  }
  return Verdict::pass();
}

inline Verdict check_monotone(const ValueOracle& f, double tol = kTol) {
  const int n = f.n();
  auto table = detail::value_table(f, kExhaustiveCheckCap, "check_monotone");
  const Set top = full_mask(n);
  for (Set s = 0;; ++s) {
    for (int v = 0; v < n; ++v) {
      if (contains(s, v)) continue;
      if (table[with(s, v)] < table[s] - tol)
        return Verdict::fail("monotonicity fails for S=" +
                                 detail::set_to_string(s) + " and S+" +
                                 std::to_string(v),
                             s, with(s, v));
    }
    if (s == top) break;
  }
  return Verdict::pass();
}

// Sampled variants: random (S, T) pairs instead of exhaustive enumeration,
// for ground sets past the exhaustive cap. A pass is evidence, not proof.
inline Verdict check_submodular_sampled(const ValueOracle& f, std::uint64_t seed,
                                        int trials, double tol = kTol) {
  if (trials < 1) throw PreconditionError("sampled check needs at least one trial");
  Rng rng(seed);
  const Set mask = full_mask(f.n());
  for (int t = 0; t < trials; ++t) {
    Set a = rng.next_u64() & mask;
    Set b = rng.next_u64() & mask;
    if (f(a) + f(b) < f(a | b) + f(a & b) - tol)
      return Verdict::fail("submodularity fails for S=" +
                               detail::set_to_string(a) + " T=" +
                               detail::set_to_string(b),
                           a, b);
  }
  return Verdict::pass();
}

inline Verdict check_monotone_sampled(const ValueOracle& f, std::uint64_t seed,
                                      int trials, double tol = kTol) {
  if (trials < 1) throw PreconditionError("sampled check needs at least one trial");
  Rng rng(seed);
  const Set mask = full_mask(f.n());
  for (int t = 0; t < trials; ++t) {
    Set s = rng.next_u64() & mask;
    if (set_size(s) == f.n()) continue;
    int v = rng.uniform_index(f.n());
    while (contains(s, v)) v = rng.uniform_index(f.n());
    if (f(with(s, v)) < f(s) - tol)
      return Verdict::fail("monotonicity fails for S=" +
                               detail::set_to_string(s) + " and S+" +
                               std::to_string(v),
                           s, with(s, v));
  }
  return Verdict::pass();
}

inline Verdict check_normalized(const ValueOracle& f, double tol = kTol) {
  return std::fabs(f(0)) <= tol
             ? Verdict::pass()
             : Verdict::fail("f(empty) = " + std::to_string(f(0)));
}

inline Verdict check_upward_closed(const FeasibleFamily& fam) {
  auto table = detail::membership_table(fam, kExhaustiveFamilyCap, "check_upward_closed");
  const Set top = full_mask(fam.n());
  for (Set s = 0;; ++s) {
    if (table[s])
      for (int v = 0; v < fam.n(); ++v)
        if (!contains(s, v) && !table[with(s, v)])
          return Verdict::fail("adding " + std::to_string(v) + " to member " +
                               detail::set_to_string(s) + " leaves the family");
    if (s == top) break;
  }
  return Verdict::pass();
}

inline Verdict check_downward_closed(const FeasibleFamily& fam) {
  auto table = detail::membership_table(fam, kExhaustiveFamilyCap, "check_downward_closed");
  const Set top = full_mask(fam.n());
  for (Set s = 0;; ++s) {
    if (table[s]) {
      Verdict bad = Verdict::pass();
      for_each_element(s, [&](int v) {
        if (!table[without(s, v)] && bad.ok)
          bad = Verdict::fail("removing " + std::to_string(v) + " from member " +
                              detail::set_to_string(s) + " leaves the family");
      });
      if (!bad.ok) return bad;
    }
    if (s == top) break;
  }
  return Verdict::pass();
}

// Matroid axioms on the probe table: empty set independent, downward closure,
// and one-step augmentation (which implies the general exchange property).
inline Verdict check_matroid(const FeasibleFamily& fam) {
  const int n = fam.n();
  auto table = detail::membership_table(fam, kMatroidCheckCap, "check_matroid");
  if (!table[0]) return Verdict::fail("empty set is not independent");
  const Set top = full_mask(n);

  std::vector<std::vector<Set>> by_size(n + 1);
  for (Set s = 0;; ++s) {
    if (table[s]) {
      Verdict bad = Verdict::pass();
      for_each_element(s, [&](int v) {
        if (!table[without(s, v)] && bad.ok)
          bad = Verdict::fail("independent set " + detail::set_to_string(s) +
                              " has a dependent subset");
      });
      if (!bad.ok) return bad;
      by_size[set_size(s)].push_back(s);
    }
    if (s == top) break;
  }

  for (int j = 0; j + 1 <= n; ++j) {
    for (Set a : by_size[j]) {
      for (Set b : by_size[j + 1]) {
        bool augmented = false;
        for_each_element(b & ~a, [&](int v) {
          if (!augmented && table[with(a, v)]) augmented = true;
        });
        if (!augmented)
          return Verdict::fail("augmentation fails for A=" +
                               detail::set_to_string(a) + " B=" +
                               detail::set_to_string(b));
      }
    }
  }
  return Verdict::pass();
}

inline constexpr int kPSystemCap = 14;

// Worst ratio, over all U, of largest to smallest maximal independent subset
// of U. Matroids give exactly 1; matchings in a simple graph give at most 2.
// A U whose only maximal independent subset is empty contributes 1.
inline double p_system_ratio(const FeasibleFamily& fam) {
  const int n = fam.n();
  auto table = detail::membership_table(fam, kPSystemCap, "p_system_ratio");
  const Set top = full_mask(n);
  double worst = 1.0;
  for (Set u = 0;; ++u) {
    int largest = -1, smallest = -1;
    for_each_subset(u, [&](Set i) {
      if (!table[i]) return;
      bool maximal = true;
      for_each_element(u & ~i, [&](int v) {
        if (table[with(i, v)]) maximal = false;
      });
      if (!maximal) return;
      int sz = set_size(i);
      largest = std::max(largest, sz);
      smallest = smallest < 0 ? sz : std::min(smallest, sz);
    });
    if (largest > 0 && smallest >= 0) {
      double ratio = smallest == 0 ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(largest) / smallest;
      worst = std::max(worst, ratio);
    }
    if (u == top) break;
  }
  return worst;
}

// Inclusion-maximal members contained in mask. Enumeration is over subsets
// of mask, so the cap applies to the mask size rather than the ground set.
inline std::vector<Set> bases_of(const FeasibleFamily& fam, Set mask) {
  if (set_size(mask) > kExhaustiveFamilyCap)
    throw CapacityError("bases_of is exhaustive, capped at |mask| <= 20");
  if (mask & ~full_mask(fam.n())) throw PreconditionError("mask outside ground set");
  std::vector<Set> out;
  for_each_subset(mask, [&](Set s) {
    if (!fam.contains(s)) return;
    bool maximal = true;
    for_each_element(mask & ~s, [&](int v) {
      if (fam.contains(with(s, v))) maximal = false;
    });
    if (maximal) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace maso

#endif  // MASO_CHECKS_HPP
