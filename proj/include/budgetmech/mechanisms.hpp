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
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "budgetmech/domain.hpp"
#include "budgetmech/instance.hpp"
#include "budgetmech/packing.hpp"
#include "budgetmech/valuation.hpp"

namespace budgetmech {

/// Switches for the ticket branches; disabling one yields a negative control.
struct TicketOptions {
  bool golden_tickets = true;
  bool wooden_spoons = true;
};

/// Golden-ticket profile of the other agents for renamed agent i (0-based):
/// zeros before i, B after i.
CostProfile canonical_gt(std::size_t agent, std::size_t n, const CostGrid& grid);
/// Wooden-spoon profile: all zeros for i < n-1, all B for the last agent.
CostProfile canonical_ws(std::size_t agent, std::size_t n, const CostGrid& grid);

/// Golden tickets, then wooden spoons, then the solver at pay-as-bid. Ticket
/// positions refer to the singleton_order renaming; the outcome uses original
/// indices. Branch labels: golden_ticket, wooden_spoon, solver.
Outcome willy_wonka(const Instance& instance, const Solver& solver,
                    const TicketOptions& options = {});

/// Selects i* alone at payment B when V({i*}) >= V(N \ {i*}), where i*
/// maximizes V({i}) / V(N \ {i}) (zero denominators count as +inf, ties go to
/// the lowest index); otherwise runs willy_wonka. Branch label of the first
/// case: max_singleton.
Outcome max_or_willy_wonka(const Instance& instance, const Solver& solver,
                           const TicketOptions& options = {});

/// max_or_willy_wonka over a feasibility family with an exact solver:
/// i* maximizes V({i}) / V(OPT_{-i}(N)) over agents with {i} in F; a golden
/// ticket allocates OPT_{+i}([i]) and pays B to i; a wooden spoon allocates
/// OPT_{-i}(N) at pay-as-bid. An infeasible forced allocation yields the empty
/// outcome labelled golden_ticket_infeasible.
Outcome max_or_willy_wonka_constrained(const Instance& instance, const FeasibilityFamily& family,
                                       const TicketOptions& options = {});

/// X*_{>=2}(c_{-1}) when V(X*(c)) / V(X*_{>=2}) < phi, else X*(c). `first` is
/// the distinguished agent 1. A worthless X*_{>=2} selects X*.
PackingSolution x1_select(const Instance& instance, std::size_t first,
                          const FeasibilityFamily& family = FeasibilityFamily::all());

/// Largest grid d such that agent 1 (first in singleton_order) belongs to
/// x1_select((d, c_{-1})) for every grid c_{-1}; 0 when no such d exists.
/// Throws GuardExceeded when (K+1)^n exceeds kMaxW1Profiles.
inline constexpr std::uint64_t kMaxW1Profiles = 59049;
Money compute_w1(const ValuationOracle& valuation, const CostGrid& grid);

/// Thread-safe memo of compute_w1 keyed by valuation content and grid.
class W1Cache {
 public:
  static W1Cache& global();
  Money get(const ValuationOracle& valuation, const CostGrid& grid);
  std::size_t size() const;
  void clear();

 private:
  mutable std::mutex mutex_;
  std::map<std::string, Money> entries_;
};

/// WNOM mechanism with threshold w1 for agent 1. Disabling wooden spoons
/// removes the all-B exception branch. Branch labels: all_budget_exception, x1.
Outcome golden_mechanism(const Instance& instance, const TicketOptions& options = {});

/// One draw of golden tickets and wooden spoons for the randomized mechanism.
/// golden[i] and wooden[i] list the costs of the other agents in ascending
/// index order.
struct TicketSpec {
  std::size_t n = 0;
  CostGrid grid{1};
  std::vector<CostProfile> golden;
  std::vector<CostProfile> wooden;

  bool operator==(const TicketSpec&) const = default;
};

struct ContinuousDraw {};
struct FiniteFamily {
  std::size_t ell = 1;
  std::size_t index = 0;
};
using TicketMode = std::variant<ContinuousDraw, FiniteFamily>;

/// ContinuousDraw samples every ticket uniformly from the grid (seeded
/// mt19937_64). FiniteFamily returns spec `index` of make_ticket_family.
/// Throws std::invalid_argument for n < 2 or an out-of-range index.
TicketSpec make_ticket_spec(std::size_t n, const CostGrid& grid, std::uint64_t seed,
                            const TicketMode& mode);

/// `ell` specs whose 2*n*ell ticket vectors are pairwise distinct, taken in
/// profile enumeration order. For n >= 3 two golden tickets of one spec never
/// fire on the same profile. Throws std::invalid_argument when
/// (K+1)^{n-1} < 2*n*ell.
std::vector<TicketSpec> make_ticket_family(std::size_t n, const CostGrid& grid, std::size_t ell);

/// If c_{-i} equals golden[i] (lowest i first) select only i at payment B;
/// else if c_{-i} equals some wooden[i] select nobody; else solver at
/// pay-as-bid.
Outcome randomized_mr(const Instance& instance, const Solver& solver, const TicketSpec& spec,
                      const TicketOptions& options = {});

/// A mechanism bound to a valuation, grid and agent count: a function from
/// cost profiles to outcomes. Copies share the rule.
class Mechanism {
 public:
  using Rule = std::function<Outcome(const CostProfile&, const TicketOptions&)>;

  Mechanism(std::string name, std::size_t n, CostGrid grid, Rule rule, bool has_tickets);

  Outcome operator()(const CostProfile& costs) const;

  const std::string& name() const { return name_; }
  std::size_t n() const { return n_; }
  const CostGrid& grid() const { return grid_; }
  const TicketOptions& options() const { return options_; }
  bool has_tickets() const { return has_tickets_; }

  Mechanism with_options(std::string name, TicketOptions options) const;
  /// Mechanism whose outcome is post(costs, this(costs)).
  Mechanism wrapped(std::string name,
                    std::function<Outcome(const CostProfile&, Outcome)> post) const;

 private:
  std::string name_;
  std::size_t n_;
  CostGrid grid_;
  std::shared_ptr<const Rule> rule_;
  bool has_tickets_;
  TicketOptions options_;
};

Mechanism make_willy_wonka(const ValuationOracle& valuation, const CostGrid& grid,
                           const Solver& solver);
/// Throws IncompatibleValuation for a valuation that is not subadditive.
Mechanism make_max_or_willy_wonka(const ValuationOracle& valuation, const CostGrid& grid,
                                  const Solver& solver);
Mechanism make_max_or_willy_wonka_constrained(const ValuationOracle& valuation,
                                              const CostGrid& grid,
                                              const FeasibilityFamily& family);
/// Computes w1 eagerly. Throws IncompatibleValuation for a valuation that is
/// not subadditive.
Mechanism make_golden_mechanism(const ValuationOracle& valuation, const CostGrid& grid);
Mechanism make_randomized_mr(const ValuationOracle& valuation, const CostGrid& grid,
                             const Solver& solver, const TicketSpec& spec);
/// Selects nobody and pays nothing.
Mechanism make_constant_mechanism(std::size_t n, const CostGrid& grid);
/// Selects each agent with c_i <= price and pays it `price`.
Mechanism make_posted_price(std::size_t n, const CostGrid& grid, Money price);

}  // namespace budgetmech
