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

// Exact and approximate solvers for the budgeted packing problem
//   max V(X)  s.t.  sum_{i in X} c_i <= B,  X in F,
// plus forced-inclusion/exclusion optima and the agent-forcing gap.
//
// Every solver breaks value ties with canonically_before and merges
// zero-cost agents into its answer whenever the family permits it.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "budgetmech/domain.hpp"
#include "budgetmech/instance.hpp"
#include "budgetmech/valuation.hpp"

namespace budgetmech {

inline constexpr std::size_t kMaxExactAgents = 20;

/// The feasible subsets F. Either every subset, or an explicit list that
/// must contain the empty set. Downward closure is not assumed.
class FeasibilityFamily {
 public:
  static FeasibilityFamily all() { return FeasibilityFamily(); }
  /// Throws std::invalid_argument if `sets` is empty, lacks the empty set, or
  /// names agents outside {0, ..., n-1}.
  static FeasibilityFamily of(std::size_t n, std::vector<AgentSet> sets);

  bool is_all() const { return !explicit_; }
  bool contains(AgentSet s) const;
  /// Sorted by bitmask; empty for the trivial family.
  const std::vector<AgentSet>& sets() const { return sets_; }

  bool operator==(const FeasibilityFamily&) const = default;

 private:
  FeasibilityFamily() = default;
  bool explicit_ = false;
  std::vector<AgentSet> sets_;
};

struct PackingSolution {
  AgentSet chosen;
  Rational value;

  bool operator==(const PackingSolution&) const = default;
};

struct BudgetConstraint {
  std::span<const Money> costs;
  Money budget;
};

/// Brute-force core: best X in F with required <= X <= universe, X disjoint
/// from forbidden and, when `budget` is given, affordable. nullopt when no set
/// qualifies.
std::optional<PackingSolution> best_feasible_subset(const ValuationOracle& valuation,
                                                    const FeasibilityFamily& family,
                                                    std::optional<BudgetConstraint> budget,
                                                    AgentSet universe, AgentSet required = {},
                                                    AgentSet forbidden = {});

/// Adds every zero-cost agent of `universe` not in `forbidden` whose addition
/// keeps the set in F, in ascending index order.
PackingSolution include_zero_cost(const ValuationOracle& valuation,
                                  const FeasibilityFamily& family, std::span<const Money> costs,
                                  PackingSolution solution, AgentSet universe,
                                  AgentSet forbidden = {});

/// Exhaustive optimum. Throws GuardExceeded for n > kMaxExactAgents.
PackingSolution solve_exact(const Instance& instance,
                            const FeasibilityFamily& family = FeasibilityFamily::all());

/// Knapsack DP over budget ticks. Throws IncompatibleValuation unless the
/// valuation is additive.
PackingSolution solve_additive_dp(const Instance& instance);

/// Partial enumeration (all sets of size <= 2, greedy completion of every
/// feasible size-3 seed by marginal value per cost). Throws
/// IncompatibleValuation unless the valuation is submodular.
PackingSolution solve_greedy_submodular(const Instance& instance);

enum class SolverMethod { exact_bruteforce, additive_dp, greedy_submodular };

std::string_view to_string(SolverMethod method);
/// Accepts "exact", "dp", "greedy" and the full enum names.
SolverMethod parse_solver_method(std::string_view name);

/// A packing algorithm together with its declared approximation guarantee.
class Solver {
 public:
  explicit Solver(SolverMethod method = SolverMethod::exact_bruteforce) : method_(method) {}

  SolverMethod method() const { return method_; }
  /// 1 for the exact methods, 159/100 (an upper bound on e/(e-1)) for greedy.
  Rational gamma() const;
  PackingSolution solve(const Instance& instance) const;
  /// Throws IncompatibleValuation if the valuation cannot be handled.
  void check_compatible(const ValuationOracle& valuation) const;

 private:
  SolverMethod method_;
};

enum class ForceMode { include, exclude };

/// OPT_{+i}(universe) or OPT_{-i}(universe) under the instance costs; nullopt
/// when no feasible set satisfies the constraint.
std::optional<PackingSolution> opt_force(const Instance& instance,
                                         const FeasibilityFamily& family, std::size_t agent,
                                         ForceMode mode, AgentSet universe);

struct ForcingGap {
  bool unbounded = false;
  Rational delta = 1;
  /// The maximizing (S, i), first in scan order.
  std::optional<AgentSet> set;
  std::optional<std::size_t> agent;
};

/// delta = max over S and i in S of V(OPT(S)) / V(OPT_{+i}(S)), computed
/// without costs. Unbounded when some OPT_{+i}(S) is infeasible or worthless
/// while OPT(S) > 0. Throws GuardExceeded for n > kMaxTableAgents.
ForcingGap agent_forcing_gap(const ValuationOracle& valuation, const FeasibilityFamily& family);

}  // namespace budgetmech
