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

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "budgetmech/domain.hpp"

namespace budgetmech {

/// Largest agent count for which a full value table is kept or checked.
inline constexpr std::size_t kMaxTableAgents = 12;

/// Monotone, normalized set function V over agents {0, ..., n-1}.
///
/// Either additive (one value per agent) or an explicit table covering all
/// 2^n subsets. Immutable; copies share the underlying storage.
class ValuationOracle {
 public:
  enum class Kind { additive, table };

  Kind kind() const { return kind_; }
  std::size_t n() const { return n_; }

  Rational value(AgentSet s) const;
  Rational singleton(std::size_t agent) const { return value(AgentSet::single(agent)); }

  /// Per-agent values; throws IncompatibleValuation unless kind() is additive.
  const std::vector<Rational>& additive_values() const;

  /// Oracle in which agent k is the old agent order[k].
  ValuationOracle permuted(std::span<const std::size_t> order) const;

  /// Canonical content string; equal oracles have equal fingerprints.
  std::string fingerprint() const;

  bool operator==(const ValuationOracle& other) const;

 private:
  friend ValuationOracle make_additive(std::vector<Rational> values);
  friend ValuationOracle make_table(std::size_t n, const std::map<AgentSet, Rational>& entries);
  friend ValuationOracle make_table(std::size_t n, std::vector<Rational> values);

  ValuationOracle(Kind kind, std::size_t n, std::shared_ptr<const std::vector<Rational>> data);

  Kind kind_;
  std::size_t n_;
  // Additive: one entry per agent. Table: 2^n entries indexed by bitmask.
  std::shared_ptr<const std::vector<Rational>> data_;
};

/// V(S) = sum of values[i] over i in S. Throws std::invalid_argument on a
/// negative value or an empty/oversized value list.
ValuationOracle make_additive(std::vector<Rational> values);

/// Explicit table. Throws std::invalid_argument on a missing subset, on
/// V(empty) != 0, or on a monotonicity violation (the message names the pair).
ValuationOracle make_table(std::size_t n, const std::map<AgentSet, Rational>& entries);
/// Same, from a dense 2^n vector indexed by bitmask.
ValuationOracle make_table(std::size_t n, std::vector<Rational> values);

enum class ValuationClass { normalized, monotone, subadditive, submodular, additive };

std::string_view to_string(ValuationClass c);
/// Throws std::invalid_argument on unknown names.
ValuationClass parse_valuation_class(std::string_view name);

struct ClassCheck {
  bool holds = true;
  /// First violating pair (S, T) in enumeration order.
  std::optional<std::pair<AgentSet, AgentSet>> witness;
};

/// Exhaustive membership test over all subset pairs. Throws GuardExceeded
/// when n exceeds kMaxTableAgents.
///
/// additive:    V(S u T) = V(S) + V(T) for disjoint S, T
/// submodular:  V(S u T) + V(S n T) <= V(S) + V(T)
/// subadditive: V(S u T) <= V(S) + V(T)
/// monotone:    S subset of T implies V(S) <= V(T)
/// normalized:  V(empty) = 0
ClassCheck check_class(const ValuationOracle& oracle, ValuationClass cls);

/// Agents sorted by singleton value, descending; ties keep ascending index.
std::vector<std::size_t> singleton_order(const ValuationOracle& oracle);

}  // namespace budgetmech
