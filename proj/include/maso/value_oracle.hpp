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

#ifndef MASO_VALUE_ORACLE_HPP
#define MASO_VALUE_ORACLE_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "maso/common.hpp"

namespace maso {

// Memoizing set-function oracle. Copies share one cache; evaluation is
// thread-compatible behind a mutex. Declared structure (monotone/submodular/
// normalized) is carried as metadata; checks.hpp verifies it on demand.
class ValueOracle {
 public:
  ValueOracle() = default;

  ValueOracle(int n, std::function<double(Set)> fn, bool claims_monotone,
              bool claims_submodular, std::string name)
      : impl_(std::make_shared<Impl>()) {
    if (n < 0 || n > kMaxGround) throw CapacityError("oracle ground set size out of range");
    if (!fn) throw PreconditionError("oracle needs an evaluation function");
    impl_->n = n;
    impl_->fn = std::move(fn);
    impl_->claims_monotone = claims_monotone;
    impl_->claims_submodular = claims_submodular;
    impl_->name = std::move(name);
    impl_->claims_normalized = std::fabs(impl_->fn(Set{0})) <= kTol;
  }

  bool valid() const { return impl_ != nullptr; }
  int n() const { return impl_->n; }
  const std::string& name() const { return impl_->name; }
  bool claims_monotone() const { return impl_->claims_monotone; }
  bool claims_submodular() const { return impl_->claims_submodular; }
  bool claims_normalized() const { return impl_->claims_normalized; }

  double operator()(Set s) const {
    if (!impl_) throw PreconditionError("oracle is empty");
    if (s & ~full_mask(impl_->n)) throw PreconditionError("set outside oracle ground set");
    {
      std::lock_guard<std::mutex> lock(impl_->mutex);
      auto it = impl_->cache.find(s);
      if (it != impl_->cache.end()) return it->second;
    }
    double value = impl_->fn(s);
    if (value < 0.0) {
      // Tiny negative values are rounding noise from float accumulation.
      if (value < -kTol)
        throw InvariantError("oracle '" + impl_->name + "' returned a negative value");
      value = 0.0;
    }
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->cache.emplace(s, value);
    return value;
  }

 private:
  struct Impl {
    int n = 0;
    std::function<double(Set)> fn;
    bool claims_monotone = false;
    bool claims_submodular = false;
    bool claims_normalized = false;
    std::string name;
    mutable std::mutex mutex;
    mutable std::unordered_map<Set, double> cache;
  };
  std::shared_ptr<Impl> impl_;
};

// f(v | s) = f(s + v) - f(s). Requires v outside s.
inline double eval_marginal(const ValueOracle& f, int v, Set s) {
  if (v < 0 || v >= f.n()) throw PreconditionError("marginal element out of range");
  if (contains(s, v)) throw PreconditionError("marginal element already in base set");
  return f(with(s, v)) - f(s);
}

}  // namespace maso

#endif  // MASO_VALUE_ORACLE_HPP
