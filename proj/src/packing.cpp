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


#include "budgetmech/packing.hpp"

#include <algorithm>
#include <string>

#include "budgetmech/errors.hpp"

namespace budgetmech {
namespace {

bool affordable(AgentSet s, const std::optional<BudgetConstraint>& budget) {
  if (!budget) return true;
  std::int64_t total = 0;
  for (std::uint32_t b = s.bits(); b != 0; b &= b - 1) {
    total += budget->costs[static_cast<std::size_t>(std::countr_zero(b))].ticks();
    if (total > budget->budget.ticks()) return false;
  }
  return true;
}

bool improves(const Rational& value, AgentSet set, const std::optional<PackingSolution>& best) {
  if (!best) return true;
  const int c = cmp(value, best->value);
  return c > 0 || (c == 0 && canonically_before(set, best->chosen));
}

std::int64_t total_cost(AgentSet s, std::span<const Money> costs) {
  std::int64_t total = 0;
  for (std::size_t a : s.members()) total += costs[a].ticks();
  return total;
}

void require_exact_guard(std::size_t n) {
  if (n > kMaxExactAgents) {
    throw GuardExceeded("solve_exact", "exact packing refuses n = " + std::to_string(n) + " > " +
                                           std::to_string(kMaxExactAgents));
  }
}

// Zero-cost marginal ratios count as +inf; larger marginal wins among them.
bool better_ratio(const Rational& gain_a, Money cost_a, const Rational& gain_b, Money cost_b) {
  const bool free_a = cost_a.ticks() == 0;
  const bool free_b = cost_b.ticks() == 0;
  if (free_a != free_b) return free_a;
  if (free_a) return gain_a > gain_b;
  return gain_a * cost_b.ticks() > gain_b * cost_a.ticks();
}

}  // namespace

FeasibilityFamily FeasibilityFamily::of(std::size_t n, std::vector<AgentSet> sets) {
  if (sets.empty()) throw std::invalid_argument("feasibility family is empty");
  const AgentSet all = AgentSet::all(n);
  for (AgentSet s : sets) {
    if (!s.subset_of(all)) {
      throw std::invalid_argument("feasible set {" + format_agent_set(s) +
                                  "} names unknown agents");
    }
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (!sets.front().empty()) {
    throw std::invalid_argument("feasibility family must contain the empty set");
  }
  FeasibilityFamily f;
  f.explicit_ = true;
  f.sets_ = std::move(sets);
  return f;
}

bool FeasibilityFamily::contains(AgentSet s) const {
  return !explicit_ || std::binary_search(sets_.begin(), sets_.end(), s);
}

std::optional<PackingSolution> best_feasible_subset(const ValuationOracle& valuation,
                                                    const FeasibilityFamily& family,
                                                    std::optional<BudgetConstraint> budget,
                                                    AgentSet universe, AgentSet required,
                                                    AgentSet forbidden) {
  std::optional<PackingSolution> best;
  if (!required.subset_of(universe) || !(required & forbidden).empty()) return best;
  const auto consider = [&](AgentSet s) {
    if (!affordable(s, budget)) return;
    Rational value = valuation.value(s);
    if (improves(value, s, best)) best = PackingSolution{s, std::move(value)};
  };
  if (family.is_all()) {
    const std::uint32_t free = universe.bits() & ~forbidden.bits() & ~required.bits();
    // Enumerate all submasks of `free`, including 0.
    std::uint32_t sub = free;
    while (true) {
      consider(AgentSet(sub | required.bits()));
      if (sub == 0) break;
      sub = (sub - 1) & free;
    }
  } else {
    for (AgentSet s : family.sets()) {
      if (s.subset_of(universe) && required.subset_of(s) && (s & forbidden).empty()) consider(s);
    }
  }
  return best;
}

PackingSolution include_zero_cost(const ValuationOracle& valuation,
                                  const FeasibilityFamily& family, std::span<const Money> costs,
                                  PackingSolution solution, AgentSet universe,
                                  AgentSet forbidden) {
  bool changed = false;
  for (std::size_t a : universe.members()) {
    if (forbidden.contains(a) || solution.chosen.contains(a) || costs[a].ticks() != 0) continue;
    const AgentSet grown = solution.chosen.with(a);
    if (!family.contains(grown)) continue;
    solution.chosen = grown;
    changed = true;
  }
  if (changed) solution.value = valuation.value(solution.chosen);
  return solution;
}

PackingSolution solve_exact(const Instance& instance, const FeasibilityFamily& family) {
  require_exact_guard(instance.n());
  const AgentSet all = AgentSet::all(instance.n());
  auto best = best_feasible_subset(instance.valuation, family,
                                   BudgetConstraint{instance.costs, instance.budget()}, all);
  if (!best) throw std::logic_error("feasibility family has no affordable set");
  return include_zero_cost(instance.valuation, family, instance.costs, std::move(*best), all);
}

PackingSolution solve_additive_dp(const Instance& instance) {
  const std::vector<Rational>& v = instance.valuation.additive_values();
  const std::size_t n = instance.n();
  const auto cap = static_cast<std::size_t>(instance.budget().ticks());
  struct Cell {
    Rational value;
    std::size_t card = 0;
  };
  const auto better = [](const Cell& a, const Cell& b) {
    const int c = cmp(a.value, b.value);
    return c > 0 || (c == 0 && a.card > b.card);
  };
  // best[i][b]: optimum over items i..n-1 with capacity b.
  std::vector<std::vector<Cell>> best(n + 1, std::vector<Cell>(cap + 1));
  for (std::size_t i = n; i-- > 0;) {
    const auto c = static_cast<std::size_t>(instance.costs[i].ticks());
    for (std::size_t b = 0; b <= cap; ++b) {
      Cell cell = best[i + 1][b];
      if (c <= b) {
        Cell take{best[i + 1][b - c].value + v[i], best[i + 1][b - c].card + 1};
        if (better(take, cell)) cell = std::move(take);
      }
      best[i][b] = std::move(cell);
    }
  }
  // Forward reconstruction: take item i whenever an optimal completion
  // exists with it, giving the lexicographically smallest index list.
  AgentSet chosen;
  std::size_t b = cap;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = static_cast<std::size_t>(instance.costs[i].ticks());
    if (c > b) continue;
    const Cell& target = best[i][b];
    const Cell& rest = best[i + 1][b - c];
    if (rest.value + v[i] == target.value && rest.card + 1 == target.card) {
      chosen = chosen.with(i);
      b -= c;
    }
  }
  PackingSolution solution{chosen, instance.valuation.value(chosen)};
  return include_zero_cost(instance.valuation, FeasibilityFamily::all(), instance.costs,
                           std::move(solution), AgentSet::all(n));
}

PackingSolution solve_greedy_submodular(const Instance& instance) {
  const ValuationOracle& v = instance.valuation;
  if (!check_class(v, ValuationClass::submodular).holds) {
    throw IncompatibleValuation("greedy solver requires a submodular valuation");
  }
  const std::size_t n = instance.n();
  const std::int64_t budget = instance.budget().ticks();
  std::optional<PackingSolution> best;
  const auto offer = [&](AgentSet s) {
    Rational value = v.value(s);
    if (improves(value, s, best)) best = PackingSolution{s, std::move(value)};
  };

  offer(AgentSet{});
  for (std::size_t a = 0; a < n; ++a) {
    if (instance.costs[a].ticks() > budget) continue;
    offer(AgentSet::single(a));
    for (std::size_t b = a + 1; b < n; ++b) {
      const AgentSet pair = AgentSet::of({a, b});
      if (total_cost(pair, instance.costs) <= budget) offer(pair);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        AgentSet s = AgentSet::of({a, b, c});
        std::int64_t spent = total_cost(s, instance.costs);
        if (spent > budget) continue;
        Rational base = v.value(s);
        AgentSet remaining = AgentSet::all(n) ^ s;
        while (!remaining.empty()) {
          std::optional<std::size_t> pick;
          Rational pick_gain;
          for (std::size_t j : remaining.members()) {
            Rational gain = v.value(s.with(j)) - base;
            if (!pick || better_ratio(gain, instance.costs[j], pick_gain, instance.costs[*pick])) {
              pick = j;
              pick_gain = std::move(gain);
            }
          }
          remaining = remaining.without(*pick);
          if (spent + instance.costs[*pick].ticks() <= budget) {
            s = s.with(*pick);
            spent += instance.costs[*pick].ticks();
            base += pick_gain;
          }
        }
        offer(s);
      }
    }
  }
  return include_zero_cost(v, FeasibilityFamily::all(), instance.costs, std::move(*best),
                           AgentSet::all(n));
}

std::string_view to_string(SolverMethod method) {
  switch (method) {
    case SolverMethod::exact_bruteforce: return "exact";
    case SolverMethod::additive_dp: return "dp";
    case SolverMethod::greedy_submodular: return "greedy";
  }
  return "unknown";
}

SolverMethod parse_solver_method(std::string_view name) {
  if (name == "exact" || name == "exact_bruteforce") return SolverMethod::exact_bruteforce;
  if (name == "dp" || name == "additive_dp") return SolverMethod::additive_dp;
  if (name == "greedy" || name == "greedy_submodular") return SolverMethod::greedy_submodular;
  throw std::invalid_argument("unknown solver \"" + std::string(name) + "\"");
}

Rational Solver::gamma() const {
  return method_ == SolverMethod::greedy_submodular ? Rational(159, 100) : Rational(1);
}

PackingSolution Solver::solve(const Instance& instance) const {
  switch (method_) {
    case SolverMethod::exact_bruteforce: return solve_exact(instance);
    case SolverMethod::additive_dp: return solve_additive_dp(instance);
    case SolverMethod::greedy_submodular: return solve_greedy_submodular(instance);
  }
  throw std::logic_error("unknown solver method");
}

void Solver::check_compatible(const ValuationOracle& valuation) const {
  switch (method_) {
    case SolverMethod::exact_bruteforce:
      require_exact_guard(valuation.n());
      return;
    case SolverMethod::additive_dp:
      valuation.additive_values();
      return;
    case SolverMethod::greedy_submodular:
      if (!check_class(valuation, ValuationClass::submodular).holds) {
        throw IncompatibleValuation("greedy solver requires a submodular valuation");
      }
      return;
  }
}

std::optional<PackingSolution> opt_force(const Instance& instance,
                                         const FeasibilityFamily& family, std::size_t agent,
                                         ForceMode mode, AgentSet universe) {
  if (agent >= instance.n()) throw std::out_of_range("agent index out of range");
  require_exact_guard(instance.n());
  const AgentSet me = AgentSet::single(agent);
  return best_feasible_subset(instance.valuation, family,
                              BudgetConstraint{instance.costs, instance.budget()}, universe,
                              mode == ForceMode::include ? me : AgentSet{},
                              mode == ForceMode::exclude ? me : AgentSet{});
}

ForcingGap agent_forcing_gap(const ValuationOracle& valuation, const FeasibilityFamily& family) {
  const std::size_t n = valuation.n();
  if (n > kMaxTableAgents) {
    throw GuardExceeded("forcing_gap", "agent-forcing gap refuses n = " + std::to_string(n) +
                                           " > " + std::to_string(kMaxTableAgents));
  }
  ForcingGap gap;
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t bits = 1; bits < count; ++bits) {
    const AgentSet s(bits);
    const Rational opt = best_feasible_subset(valuation, family, std::nullopt, s)->value;
    for (std::size_t i : s.members()) {
      const auto forced =
          best_feasible_subset(valuation, family, std::nullopt, s, AgentSet::single(i));
      const bool worthless = !forced || sgn(forced->value) == 0;
      if (worthless) {
        if (sgn(opt) > 0) {
          gap.unbounded = true;
          gap.set = s;
          gap.agent = i;
          return gap;
        }
        if (!forced) continue;
      }
      const Rational ratio = worthless ? Rational(1) : Rational(opt / forced->value);
      if (ratio > gap.delta || !gap.set) {
        if (ratio > gap.delta) gap.delta = ratio;
        gap.set = s;
        gap.agent = i;
      }
    }
  }
  return gap;
}

}  // namespace budgetmech
