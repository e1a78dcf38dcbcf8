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


#include "budgetmech/mechanisms.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "budgetmech/errors.hpp"

namespace budgetmech {
namespace {

struct Renamed {
  std::vector<std::size_t> order;  // order[k] = original index of renamed agent k
  CostProfile costs;               // costs in renamed positions
};

Renamed rename(const Instance& instance) {
  Renamed r{singleton_order(instance.valuation), {}};
  r.costs.reserve(instance.n());
  for (std::size_t a : r.order) r.costs.push_back(instance.costs[a]);
  return r;
}

bool others_equal(const CostProfile& costs, std::size_t skip, std::int64_t before,
                  std::int64_t after) {
  for (std::size_t j = 0; j < costs.size(); ++j) {
    if (j == skip) continue;
    if (costs[j].ticks() != (j < skip ? before : after)) return false;
  }
  return true;
}

std::optional<std::size_t> golden_ticket_holder(const CostProfile& rc, std::int64_t budget) {
  for (std::size_t i = 0; i < rc.size(); ++i) {
    if (rc[i].ticks() < budget && others_equal(rc, i, 0, budget)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> wooden_spoon_holder(const CostProfile& rc, std::int64_t budget) {
  const std::size_t n = rc.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rc[i].ticks() >= budget) continue;
    const std::int64_t target = i + 1 < n ? 0 : budget;
    if (others_equal(rc, i, target, target)) return i;
  }
  return std::nullopt;
}

Outcome pay_as_bid(const Instance& instance, AgentSet chosen, std::string branch) {
  Outcome out = Outcome::empty(instance.n(), std::move(branch));
  for (std::size_t a : chosen.members()) out.select(a, instance.costs[a]);
  return out;
}

// Index of the maximum ratio num[i]/den[i] over eligible agents; zero
// denominators are +inf and ties keep the lowest index.
std::optional<std::size_t> argmax_ratio(const std::vector<Rational>& num,
                                        const std::vector<Rational>& den,
                                        const std::vector<bool>& eligible) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (!eligible[i]) continue;
    if (!best) {
      best = i;
      continue;
    }
    const bool inf_i = sgn(den[i]) == 0;
    const bool inf_b = sgn(den[*best]) == 0;
    if (inf_b) continue;
    if (inf_i || num[i] * den[*best] > num[*best] * den[i]) best = i;
  }
  return best;
}

CostProfile others_of(const CostProfile& costs, std::size_t agent) {
  CostProfile out;
  out.reserve(costs.size() - 1);
  for (std::size_t j = 0; j < costs.size(); ++j) {
    if (j != agent) out.push_back(costs[j]);
  }
  return out;
}

void require_subadditive(const ValuationOracle& valuation, const std::string& mechanism) {
  if (!check_class(valuation, ValuationClass::subadditive).holds) {
    throw IncompatibleValuation(mechanism + " requires a subadditive valuation");
  }
}

}  // namespace

CostProfile canonical_gt(std::size_t agent, std::size_t n, const CostGrid& grid) {
  if (agent >= n) throw std::out_of_range("agent index out of range");
  CostProfile out;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != agent) out.push_back(j < agent ? Money(0) : grid.budget());
  }
  return out;
}

CostProfile canonical_ws(std::size_t agent, std::size_t n, const CostGrid& grid) {
  if (agent >= n) throw std::out_of_range("agent index out of range");
  return CostProfile(n - 1, agent + 1 < n ? Money(0) : grid.budget());
}

Outcome willy_wonka(const Instance& instance, const Solver& solver,
                    const TicketOptions& options) {
  const std::size_t n = instance.n();
  const std::int64_t budget = instance.budget().ticks();
  const Renamed r = rename(instance);
  if (options.golden_tickets) {
    if (auto i = golden_ticket_holder(r.costs, budget)) {
      Outcome out = Outcome::empty(n, "golden_ticket");
      for (std::size_t j = 0; j < *i; ++j) out.select(r.order[j], Money(0));
      out.select(r.order[*i], instance.budget());
      return out;
    }
  }
  if (options.wooden_spoons && n >= 2) {
    if (auto i = wooden_spoon_holder(r.costs, budget)) {
      Outcome out = Outcome::empty(n, "wooden_spoon");
      if (*i + 1 == n) {
        out.select(r.order[0], instance.budget());
      } else {
        for (std::size_t j = 0; j < n; ++j) {
          if (j != *i) out.select(r.order[j], Money(0));
        }
      }
      return out;
    }
  }
  return pay_as_bid(instance, solver.solve(instance).chosen, "solver");
}

Outcome max_or_willy_wonka(const Instance& instance, const Solver& solver,
                           const TicketOptions& options) {
  const std::size_t n = instance.n();
  const AgentSet all = AgentSet::all(n);
  std::vector<Rational> single(n), rest(n);
  for (std::size_t i = 0; i < n; ++i) {
    single[i] = instance.valuation.singleton(i);
    rest[i] = instance.valuation.value(all.without(i));
  }
  const std::size_t star = *argmax_ratio(single, rest, std::vector<bool>(n, true));
  if (single[star] >= rest[star]) {
    Outcome out = Outcome::empty(n, "max_singleton");
    out.select(star, instance.budget());
    return out;
  }
  return willy_wonka(instance, solver, options);
}

Outcome max_or_willy_wonka_constrained(const Instance& instance, const FeasibilityFamily& family,
                                       const TicketOptions& options) {
  const std::size_t n = instance.n();
  const std::int64_t budget = instance.budget().ticks();
  const AgentSet all = AgentSet::all(n);
  const ValuationOracle& v = instance.valuation;

  std::vector<Rational> single(n), rest(n);
  std::vector<bool> eligible(n);
  for (std::size_t i = 0; i < n; ++i) {
    single[i] = v.singleton(i);
    rest[i] = best_feasible_subset(v, family, std::nullopt, all, {}, AgentSet::single(i))->value;
    eligible[i] = family.contains(AgentSet::single(i));
  }
  if (auto star = argmax_ratio(single, rest, eligible); star && single[*star] >= rest[*star]) {
    Outcome out = Outcome::empty(n, "max_singleton");
    out.select(*star, instance.budget());
    return out;
  }

  const Renamed r = rename(instance);
  const BudgetConstraint constraint{instance.costs, instance.budget()};
  if (options.golden_tickets) {
    if (auto i = golden_ticket_holder(r.costs, budget)) {
      const std::size_t holder = r.order[*i];
      AgentSet prefix;
      for (std::size_t j = 0; j <= *i; ++j) prefix = prefix.with(r.order[j]);
      const auto forced =
          best_feasible_subset(v, family, constraint, prefix, AgentSet::single(holder));
      if (!forced) return Outcome::empty(n, "golden_ticket_infeasible");
      Outcome out = Outcome::empty(n, "golden_ticket");
      for (std::size_t a : forced->chosen.members()) {
        out.select(a, a == holder ? instance.budget() : Money(0));
      }
      return out;
    }
  }
  if (options.wooden_spoons && n >= 2) {
    if (auto i = wooden_spoon_holder(r.costs, budget)) {
      const auto kept =
          best_feasible_subset(v, family, constraint, all, {}, AgentSet::single(r.order[*i]));
      return pay_as_bid(instance, kept->chosen, "wooden_spoon");
    }
  }
  return pay_as_bid(instance, solve_exact(instance, family).chosen, "solver");
}

PackingSolution x1_select(const Instance& instance, std::size_t first,
                          const FeasibilityFamily& family) {
  if (first >= instance.n()) throw std::out_of_range("agent index out of range");
  PackingSolution best = solve_exact(instance, family);
  auto without_first = best_feasible_subset(instance.valuation, family,
                                            BudgetConstraint{instance.costs, instance.budget()},
                                            AgentSet::all(instance.n()), {},
                                            AgentSet::single(first));
  if (!without_first || sgn(without_first->value) == 0) return best;
  if (compare_ratio_to_phi(best.value, without_first->value) == std::strong_ordering::less) {
    return *without_first;
  }
  return best;
}

Money compute_w1(const ValuationOracle& valuation, const CostGrid& grid) {
  const std::size_t n = valuation.n();
  std::uint64_t total = 0;
  try {
    total = grid.profile_count(n);
  } catch (const std::overflow_error&) {
    total = kMaxW1Profiles + 1;
  }
  if (total > kMaxW1Profiles) {
    throw GuardExceeded("compute_w1", "w1 enumeration refuses (K+1)^n = " +
                                          std::to_string(total) + " > " +
                                          std::to_string(kMaxW1Profiles));
  }
  const std::size_t first = singleton_order(valuation).front();
  if (n == 1) return grid.budget();
  for (std::int64_t d = grid.resolution(); d >= 0; --d) {
    bool always = true;
    for (const CostProfile& others : enumerate_profiles(grid, n - 1)) {
      CostProfile costs;
      costs.reserve(n);
      for (std::size_t j = 0, k = 0; j < n; ++j) {
        costs.push_back(j == first ? Money(d) : others[k++]);
      }
      const Instance inst = make_instance(valuation, grid, std::move(costs));
      if (!x1_select(inst, first).chosen.contains(first)) {
        always = false;
        break;
      }
    }
    if (always) return Money(d);
  }
  return Money(0);
}

W1Cache& W1Cache::global() {
  static W1Cache cache;
  return cache;
}

Money W1Cache::get(const ValuationOracle& valuation, const CostGrid& grid) {
  const std::string key = valuation.fingerprint() + "|" + std::to_string(grid.resolution());
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  const Money w1 = compute_w1(valuation, grid);
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.emplace(key, w1);
  return w1;
}

std::size_t W1Cache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

void W1Cache::clear() {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.clear();
}

Outcome golden_mechanism(const Instance& instance, const TicketOptions& options) {
  const std::size_t n = instance.n();
  const std::int64_t budget = instance.budget().ticks();
  const Renamed r = rename(instance);
  const std::size_t first = r.order[0];
  if (options.wooden_spoons) {
    bool exception = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != 1 && r.costs[k].ticks() != budget) exception = false;
    }
    if (exception) {
      Outcome out = Outcome::empty(n, "all_budget_exception");
      out.select(first, instance.costs[first]);
      if (n >= 2 && r.costs[1].ticks() == 0) out.select(r.order[1], Money(0));
      return out;
    }
  }
  const Money w1 = W1Cache::global().get(instance.valuation, instance.grid);
  CostProfile proxy = instance.costs;
  proxy[first] = std::max(w1, proxy[first]);
  const Instance shifted = instance.with_costs(proxy);
  Outcome out = Outcome::empty(n, "x1");
  for (std::size_t a : x1_select(shifted, first).chosen.members()) out.select(a, proxy[a]);
  return out;
}

std::vector<TicketSpec> make_ticket_family(std::size_t n, const CostGrid& grid, std::size_t ell) {
  if (n < 2) throw std::invalid_argument("tickets need at least two agents");
  if (ell < 1) throw std::invalid_argument("ticket family needs at least one spec");
  const std::size_t m = n - 1;
  std::uint64_t available = 0;
  try {
    available = grid.profile_count(m);
  } catch (const std::overflow_error&) {
    available = UINT64_MAX;
  }
  const std::uint64_t needed = 2 * static_cast<std::uint64_t>(n) * ell;
  if (available < needed) {
    throw std::invalid_argument("ticket capacity exceeded: " + std::to_string(ell) +
                                " disjoint specs need 2*n*l = " + std::to_string(needed) +
                                " distinct profiles but (K+1)^(n-1) = " +
                                std::to_string(available));
  }
  // Golden tickets GT_i and GT_j of one spec fire together only if they agree
  // on every coordinate outside {i, j}.
  const auto coordinate = [](const CostProfile& ticket, std::size_t owner, std::size_t agent) {
    return ticket[agent < owner ? agent : agent - 1];
  };
  const auto compatible = [&](const CostProfile& gi, std::size_t i, const CostProfile& gj,
                              std::size_t j) {
    for (std::size_t a = 0; a < n; ++a) {
      if (a == i || a == j) continue;
      if (coordinate(gi, i, a) != coordinate(gj, j, a)) return true;
    }
    return n < 3;
  };
  std::vector<bool> used(available, false);
  std::vector<TicketSpec> specs;
  for (std::size_t s = 0; s < ell; ++s) {
    TicketSpec spec{n, grid, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<std::uint64_t> gt;
      for (std::uint64_t idx = 0; idx < available && !gt; ++idx) {
        if (used[idx]) continue;
        const CostProfile candidate = profile_at(grid, m, idx);
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) ok = compatible(candidate, i, spec.golden[j], j);
        if (ok) gt = idx;
      }
      if (!gt) throw std::invalid_argument("ticket capacity exceeded while building family");
      used[*gt] = true;
      spec.golden.push_back(profile_at(grid, m, *gt));
      std::optional<std::uint64_t> ws;
      for (std::uint64_t idx = 0; idx < available && !ws; ++idx) {
        if (!used[idx]) ws = idx;
      }
      if (!ws) throw std::invalid_argument("ticket capacity exceeded while building family");
      used[*ws] = true;
      spec.wooden.push_back(profile_at(grid, m, *ws));
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

TicketSpec make_ticket_spec(std::size_t n, const CostGrid& grid, std::uint64_t seed,
                            const TicketMode& mode) {
  if (n < 2) throw std::invalid_argument("tickets need at least two agents");
  if (const auto* finite = std::get_if<FiniteFamily>(&mode)) {
    if (finite->index >= finite->ell) {
      throw std::invalid_argument("spec index " + std::to_string(finite->index) +
                                  " outside family of size " + std::to_string(finite->ell));
    }
    return make_ticket_family(n, grid, finite->ell)[finite->index];
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> tick(0, grid.resolution());
  const auto draw = [&] {
    CostProfile p;
    for (std::size_t k = 0; k + 1 < n; ++k) p.emplace_back(tick(rng));
    return p;
  };
  TicketSpec spec{n, grid, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    spec.golden.push_back(draw());
    spec.wooden.push_back(draw());
  }
  return spec;
}

Outcome randomized_mr(const Instance& instance, const Solver& solver, const TicketSpec& spec,
                      const TicketOptions& options) {
  const std::size_t n = instance.n();
  if (spec.n != n || !(spec.grid == instance.grid)) {
    throw std::invalid_argument("ticket spec does not match the instance");
  }
  if (options.golden_tickets) {
    for (std::size_t i = 0; i < n; ++i) {
      if (others_of(instance.costs, i) == spec.golden[i]) {
        Outcome out = Outcome::empty(n, "golden_ticket");
        out.select(i, instance.budget());
        return out;
      }
    }
  }
  if (options.wooden_spoons) {
    for (std::size_t i = 0; i < n; ++i) {
      if (others_of(instance.costs, i) == spec.wooden[i]) return Outcome::empty(n, "wooden_spoon");
    }
  }
  return pay_as_bid(instance, solver.solve(instance).chosen, "solver");
}

Mechanism::Mechanism(std::string name, std::size_t n, CostGrid grid, Rule rule, bool has_tickets)
    : name_(std::move(name)),
      n_(n),
      grid_(grid),
      rule_(std::make_shared<const Rule>(std::move(rule))),
      has_tickets_(has_tickets) {}

Outcome Mechanism::operator()(const CostProfile& costs) const {
  if (costs.size() != n_) throw std::invalid_argument("profile has the wrong number of agents");
  return (*rule_)(costs, options_);
}

Mechanism Mechanism::with_options(std::string name, TicketOptions options) const {
  Mechanism copy = *this;
  copy.name_ = std::move(name);
  copy.options_ = options;
  return copy;
}

Mechanism Mechanism::wrapped(std::string name,
                             std::function<Outcome(const CostProfile&, Outcome)> post) const {
  Rule base = [inner = rule_](const CostProfile& c, const TicketOptions& o) {
    return (*inner)(c, o);
  };
  Mechanism copy(std::move(name), n_, grid_,
                 [base = std::move(base), post = std::move(post)](const CostProfile& c,
                                                                  const TicketOptions& o) {
                   return post(c, base(c, o));
                 },
                 has_tickets_);
  copy.options_ = options_;
  return copy;
}

Mechanism make_willy_wonka(const ValuationOracle& valuation, const CostGrid& grid,
                           const Solver& solver) {
  solver.check_compatible(valuation);
  return Mechanism(
      "ww", valuation.n(), grid,
      [valuation, grid, solver](const CostProfile& c, const TicketOptions& o) {
        return willy_wonka(make_instance(valuation, grid, c), solver, o);
      },
      true);
}

Mechanism make_max_or_willy_wonka(const ValuationOracle& valuation, const CostGrid& grid,
                                  const Solver& solver) {
  solver.check_compatible(valuation);
  require_subadditive(valuation, "max_or_willy_wonka");
  return Mechanism(
      "moww", valuation.n(), grid,
      [valuation, grid, solver](const CostProfile& c, const TicketOptions& o) {
        return max_or_willy_wonka(make_instance(valuation, grid, c), solver, o);
      },
      true);
}

Mechanism make_max_or_willy_wonka_constrained(const ValuationOracle& valuation,
                                              const CostGrid& grid,
                                              const FeasibilityFamily& family) {
  Solver().check_compatible(valuation);
  return Mechanism(
      "moww-constrained", valuation.n(), grid,
      [valuation, grid, family](const CostProfile& c, const TicketOptions& o) {
        return max_or_willy_wonka_constrained(make_instance(valuation, grid, c), family, o);
      },
      true);
}

Mechanism make_golden_mechanism(const ValuationOracle& valuation, const CostGrid& grid) {
  require_subadditive(valuation, "golden_mechanism");
  W1Cache::global().get(valuation, grid);
  return Mechanism(
      "golden", valuation.n(), grid,
      [valuation, grid](const CostProfile& c, const TicketOptions& o) {
        return golden_mechanism(make_instance(valuation, grid, c), o);
      },
      true);
}

Mechanism make_randomized_mr(const ValuationOracle& valuation, const CostGrid& grid,
                             const Solver& solver, const TicketSpec& spec) {
  solver.check_compatible(valuation);
  if (spec.n != valuation.n() || !(spec.grid == grid)) {
    throw std::invalid_argument("ticket spec does not match the instance");
  }
  return Mechanism(
      "mr", valuation.n(), grid,
      [valuation, grid, solver, spec](const CostProfile& c, const TicketOptions& o) {
        return randomized_mr(make_instance(valuation, grid, c), solver, spec, o);
      },
      true);
}

Mechanism make_constant_mechanism(std::size_t n, const CostGrid& grid) {
  return Mechanism(
      "constant", n, grid,
      [n](const CostProfile&, const TicketOptions&) { return Outcome::empty(n, "constant"); },
      false);
}

Mechanism make_posted_price(std::size_t n, const CostGrid& grid, Money price) {
  if (!grid.admits(price)) throw std::invalid_argument("posted price exceeds the budget");
  return Mechanism(
      "posted_price", n, grid,
      [n, price](const CostProfile& c, const TicketOptions&) {
        Outcome out = Outcome::empty(n, "posted_price");
        for (std::size_t i = 0; i < n; ++i) {
          if (c[i] <= price) out.select(i, price);
        }
        return out;
      },
      false);
}

}  // namespace budgetmech
