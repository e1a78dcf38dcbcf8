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


#include <random>
#include <set>

#include <gtest/gtest.h>

#include "budgetmech/errors.hpp"
#include "budgetmech/generators.hpp"
#include "budgetmech/mechanisms.hpp"
#include "budgetmech/verify.hpp"

namespace budgetmech {
namespace {

CostProfile ticks(std::initializer_list<std::int64_t> values) {
  CostProfile out;
  for (std::int64_t v : values) out.emplace_back(v);
  return out;
}

std::vector<bool> bits(std::initializer_list<int> values) {
  std::vector<bool> out;
  for (int v : values) out.push_back(v != 0);
  return out;
}

Instance additive(std::initializer_list<long> values, std::int64_t k, CostProfile costs) {
  std::vector<Rational> v;
  for (long x : values) v.emplace_back(x);
  return make_instance(make_additive(v), CostGrid(k), std::move(costs));
}

TEST(CanonicalTickets, GoldenTicketsForThreeAgents) {
  const CostGrid g(4);
  EXPECT_EQ(canonical_gt(0, 3, g), ticks({4, 4}));
  EXPECT_EQ(canonical_gt(1, 3, g), ticks({0, 4}));
  EXPECT_EQ(canonical_gt(2, 3, g), ticks({0, 0}));
}

TEST(CanonicalTickets, WoodenSpoons) {
  const CostGrid g(4);
  EXPECT_EQ(canonical_ws(0, 3, g), ticks({0, 0}));
  EXPECT_EQ(canonical_ws(1, 3, g), ticks({0, 0}));
  EXPECT_EQ(canonical_ws(2, 3, g), ticks({4, 4}));
  EXPECT_EQ(canonical_ws(0, 2, g), ticks({0}));
}

TEST(WillyWonka, AllZeroProfileFiresLastGoldenTicket) {
  const Outcome o = willy_wonka(additive({3, 2, 1}, 4, ticks({0, 0, 0})), Solver());
  EXPECT_EQ(o.allocation, bits({1, 1, 1}));
  EXPECT_EQ(o.payments, ticks({0, 0, 4}));
  EXPECT_EQ(o.branch, "golden_ticket");
}

TEST(WillyWonka, FirstAgentWoodenSpoon) {
  const Outcome o = willy_wonka(additive({3, 2, 1}, 4, ticks({2, 0, 0})), Solver());
  EXPECT_EQ(o.allocation, bits({0, 1, 1}));
  EXPECT_EQ(o.payments, ticks({0, 0, 0}));
  EXPECT_EQ(o.branch, "wooden_spoon");
}

TEST(WillyWonka, LastAgentWoodenSpoonPaysFirstAgent) {
  const Outcome o = willy_wonka(additive({3, 2, 1}, 4, ticks({4, 4, 2})), Solver());
  EXPECT_EQ(o.allocation, bits({1, 0, 0}));
  EXPECT_EQ(o.payments, ticks({4, 0, 0}));
}

TEST(WillyWonka, GoldenTicketOfMiddleAgent) {
  const Outcome o = willy_wonka(additive({3, 2, 1}, 4, ticks({0, 3, 4})), Solver());
  EXPECT_EQ(o.allocation, bits({1, 1, 0}));
  EXPECT_EQ(o.payments, ticks({0, 4, 0}));
}

TEST(WillyWonka, SolverBranchPaysBids) {
  const Outcome o = willy_wonka(additive({3, 2, 1}, 4, ticks({1, 2, 3})), Solver());
  EXPECT_EQ(o.branch, "solver");
  EXPECT_EQ(o.allocation, bits({1, 1, 0}));
  EXPECT_EQ(o.payments, ticks({1, 2, 0}));
}

TEST(WillyWonka, ReportsInOriginalIndexing) {
  // Renamed order is (3, 2, 1): the all-zero golden ticket belongs to original agent 1.
  const Outcome o = willy_wonka(additive({1, 2, 3}, 4, ticks({0, 0, 0})), Solver());
  EXPECT_EQ(o.allocation, bits({1, 1, 1}));
  EXPECT_EQ(o.payments, ticks({4, 0, 0}));
}

TEST(WillyWonka, SingleAgent) {
  const Outcome low = willy_wonka(additive({5}, 4, ticks({1})), Solver());
  EXPECT_EQ(low.payments, ticks({4}));
  const Outcome high = willy_wonka(additive({5}, 4, ticks({4})), Solver());
  EXPECT_EQ(high.allocation, bits({1}));
  EXPECT_EQ(high.payments, ticks({4}));
}

TEST(MaxOrWillyWonka, DominantSingleton) {
  for (const CostProfile& c : enumerate_profiles(CostGrid(2), 3)) {
    const Outcome o = max_or_willy_wonka(additive({10, 1, 1}, 2, c), Solver());
    EXPECT_EQ(o.allocation, bits({1, 0, 0}));
    EXPECT_EQ(o.payments, ticks({2, 0, 0}));
  }
}

TEST(MaxOrWillyWonka, TightOnTwoUnitAgents) {
  const Instance inst = additive({1, 1}, 4, ticks({1, 1}));
  const Outcome o = max_or_willy_wonka(inst, Solver());
  EXPECT_EQ(o.selected().size(), 1u);
  EXPECT_EQ(o.total_payment(), Money(4));
  EXPECT_EQ(approx_ratio(o, inst), Ratio::of(2, 1));
}

TEST(MaxOrWillyWonka, DelegatesWhenNoSingletonDominates) {
  for (const CostProfile& c : enumerate_profiles(CostGrid(2), 3)) {
    const Instance inst = additive({2, 2, 3}, 2, c);
    EXPECT_EQ(max_or_willy_wonka(inst, Solver()), willy_wonka(inst, Solver()));
  }
}

TEST(MaxOrWillyWonka, ZeroComplementCountsAsInfinite) {
  const Outcome o = max_or_willy_wonka(additive({0, 3}, 2, ticks({1, 1})), Solver());
  EXPECT_EQ(o.allocation, bits({0, 1}));
  EXPECT_EQ(o.payments, ticks({0, 2}));
}

TEST(MaxOrWillyWonka, RequiresSubadditive) {
  std::vector<Rational> values = {0, 1, 1, 3};
  EXPECT_THROW(make_max_or_willy_wonka(make_table(2, values), CostGrid(2), Solver()),
               IncompatibleValuation);
}

TEST(Constrained, TrivialFamilyMatchesUnconstrained) {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 3);
    const CostGrid grid(4);
    const ValuationOracle v = trial % 2 == 0 ? random_additive(n, rng) : random_subadditive_table(n, rng);
    const Instance inst = make_instance(v, grid, random_profile(grid, n, rng));
    EXPECT_EQ(max_or_willy_wonka_constrained(inst, FeasibilityFamily::all()),
              max_or_willy_wonka(inst, Solver()))
        << "trial " << trial;
  }
}

TEST(Constrained, GoldenTicketForcesHolderIn) {
  const FeasibilityFamily f = FeasibilityFamily::of(
      3, {AgentSet(), AgentSet::of({0}), AgentSet::of({1}), AgentSet::of({2}), AgentSet::of({0, 2}),
          AgentSet::of({1, 2})});
  const Outcome o = max_or_willy_wonka_constrained(additive({3, 2, 2}, 4, ticks({0, 1, 4})), f);
  EXPECT_EQ(o.branch, "golden_ticket");
  EXPECT_EQ(o.allocation, bits({0, 1, 0}));
  EXPECT_EQ(o.payments, ticks({0, 4, 0}));
}

TEST(Constrained, ConflictFamilyTakesDominantSingleton) {
  const FeasibilityFamily f = FeasibilityFamily::of(
      3, {AgentSet(), AgentSet::of({0}), AgentSet::of({1}), AgentSet::of({2}), AgentSet::of({0, 2})});
  const Outcome o = max_or_willy_wonka_constrained(additive({3, 2, 1}, 4, ticks({0, 1, 4})), f);
  EXPECT_EQ(o.branch, "max_singleton");
  EXPECT_EQ(o.allocation, bits({1, 0, 0}));
}

TEST(Constrained, AllZeroCostsAllocateForcedOptimum) {
  const FeasibilityFamily f = FeasibilityFamily::of(
      3, {AgentSet(), AgentSet::of({0}), AgentSet::of({1}), AgentSet::of({2}), AgentSet::of({0, 1}),
          AgentSet::of({0, 2}), AgentSet::of({1, 2}), AgentSet::all(3)});
  const Outcome o = max_or_willy_wonka_constrained(additive({2, 2, 2}, 4, ticks({0, 0, 0})), f);
  EXPECT_EQ(o.branch, "golden_ticket");
  EXPECT_EQ(o.allocation, bits({1, 1, 1}));
  EXPECT_EQ(o.payments, ticks({0, 0, 4}));
}

TEST(X1Select, DominantFirstAgentTakesOptimum) {
  EXPECT_EQ(x1_select(additive({10, 1}, 4, ticks({1, 1})), 0).chosen, AgentSet::of({0, 1}));
  EXPECT_EQ(x1_select(additive({10, 1}, 4, ticks({3, 3})), 0).chosen, AgentSet::of({0}));
}

TEST(X1Select, CompetitiveRestWins) {
  const PackingSolution s = x1_select(additive({1, 1, 1}, 4, ticks({4, 0, 0})), 0);
  EXPECT_EQ(s.chosen, AgentSet::of({1, 2}));
}

TEST(X1Select, SingleAgent) {
  EXPECT_EQ(x1_select(additive({3}, 4, ticks({2})), 0).chosen, AgentSet::of({0}));
}

TEST(ComputeW1, Examples) {
  EXPECT_EQ(compute_w1(make_additive({10, 1}), CostGrid(4)), Money(4));
  EXPECT_EQ(compute_w1(make_additive({1, 1}), CostGrid(2)), Money(0));
  EXPECT_EQ(compute_w1(make_additive({1, 1}), CostGrid(4)), Money(0));
  EXPECT_EQ(compute_w1(make_additive({3}), CostGrid(4)), Money(4));
}

TEST(ComputeW1, Guard) {
  try {
    compute_w1(make_additive({1, 1, 1, 1, 1, 1}), CostGrid(8));
    FAIL() << "expected a guard error";
  } catch (const GuardExceeded& e) {
    EXPECT_EQ(e.guard(), "compute_w1");
  }
}

TEST(ComputeW1, CacheReturnsSameValue) {
  const ValuationOracle v = make_additive({5, 2, 2});
  const Money direct = compute_w1(v, CostGrid(4));
  EXPECT_EQ(W1Cache::global().get(v, CostGrid(4)), direct);
  EXPECT_EQ(W1Cache::global().get(v, CostGrid(4)), direct);
}

TEST(GoldenMechanism, AllBudgetException) {
  const Outcome a = golden_mechanism(additive({3, 2, 1}, 8, ticks({8, 5, 8})));
  EXPECT_EQ(a.allocation, bits({1, 0, 0}));
  EXPECT_EQ(a.payments, ticks({8, 0, 0}));
  const Outcome b = golden_mechanism(additive({3, 2, 1}, 8, ticks({8, 0, 8})));
  EXPECT_EQ(b.allocation, bits({1, 1, 0}));
  EXPECT_EQ(b.payments, ticks({8, 0, 0}));
}

TEST(GoldenMechanism, DominantAgentPaidThreshold) {
  const Outcome o = golden_mechanism(additive({10, 1}, 8, ticks({3, 2})));
  EXPECT_EQ(o.allocation, bits({1, 0}));
  EXPECT_EQ(o.payments, ticks({8, 0}));
}

TEST(GoldenMechanism, PaysProxyBids) {
  // w1 = 0 for v = (1,1): the proxy profile equals the declared one.
  const Outcome o = golden_mechanism(additive({1, 1}, 4, ticks({1, 2})));
  EXPECT_EQ(o.allocation, bits({1, 1}));
  EXPECT_EQ(o.payments, ticks({1, 2}));
}

TEST(TicketSpec, FiniteFamilyIsDisjoint) {
  const CostGrid grid(8);
  const TicketSpec a = make_ticket_spec(2, grid, 0, FiniteFamily{2, 0});
  const TicketSpec b = make_ticket_spec(2, grid, 0, FiniteFamily{2, 1});
  std::set<CostProfile> seen;
  for (const TicketSpec* s : {&a, &b}) {
    for (const CostProfile& t : s->golden) EXPECT_TRUE(seen.insert(t).second);
    for (const CostProfile& t : s->wooden) EXPECT_TRUE(seen.insert(t).second);
  }
  EXPECT_EQ(seen.size(), 8u);
}

TEST(TicketSpec, FamilyAtThreeAgentsIsDisjoint) {
  const std::vector<TicketSpec> family = make_ticket_family(3, CostGrid(8), 12);
  std::set<CostProfile> seen;
  for (const TicketSpec& s : family) {
    for (const CostProfile& t : s.golden) EXPECT_TRUE(seen.insert(t).second);
    for (const CostProfile& t : s.wooden) EXPECT_TRUE(seen.insert(t).second);
  }
  EXPECT_EQ(seen.size(), 72u);
}

TEST(TicketSpec, ContinuousDrawIsSeeded) {
  const CostGrid grid(8);
  EXPECT_EQ(make_ticket_spec(3, grid, 42, ContinuousDraw{}),
            make_ticket_spec(3, grid, 42, ContinuousDraw{}));
  EXPECT_NE(make_ticket_spec(3, grid, 42, ContinuousDraw{}),
            make_ticket_spec(3, grid, 43, ContinuousDraw{}));
}

TEST(TicketSpec, Errors) {
  EXPECT_THROW(make_ticket_spec(1, CostGrid(8), 0, ContinuousDraw{}), std::invalid_argument);
  EXPECT_THROW(make_ticket_family(3, CostGrid(8), 50), std::invalid_argument);
}

TicketSpec handmade_spec() {
  TicketSpec spec{3, CostGrid(4), {}, {}};
  spec.golden = {ticks({1, 1}), ticks({2, 2}), ticks({3, 3})};
  spec.wooden = {ticks({1, 2}), ticks({2, 3}), ticks({3, 1})};
  return spec;
}

TEST(RandomizedMr, GoldenTicketSelectsHolderOnly) {
  const Outcome o = randomized_mr(additive({3, 2, 1}, 4, ticks({2, 4, 2})), Solver(), handmade_spec());
  EXPECT_EQ(o.allocation, bits({0, 1, 0}));
  EXPECT_EQ(o.payments, ticks({0, 4, 0}));
}

TEST(RandomizedMr, WoodenSpoonSelectsNobody) {
  const Outcome o = randomized_mr(additive({3, 2, 1}, 4, ticks({0, 1, 2})), Solver(), handmade_spec());
  EXPECT_EQ(o.allocation, bits({0, 0, 0}));
  EXPECT_EQ(o.payments, ticks({0, 0, 0}));
}

TEST(RandomizedMr, OtherwisePayAsBid) {
  const Outcome o = randomized_mr(additive({3, 2, 1}, 4, ticks({0, 0, 0})), Solver(), handmade_spec());
  EXPECT_EQ(o.branch, "solver");
  EXPECT_EQ(o.allocation, bits({1, 1, 1}));
  EXPECT_EQ(o.payments, ticks({0, 0, 0}));
}

TEST(RandomizedMr, RejectsMismatchedSpec) {
  EXPECT_THROW(randomized_mr(additive({3, 2}, 4, ticks({0, 0})), Solver(), handmade_spec()),
               std::invalid_argument);
}

TEST(Mechanism, FactoriesAndSizeCheck) {
  const ValuationOracle v = make_additive({3, 2, 1});
  const CostGrid g(4);
  const Mechanism ww = make_willy_wonka(v, g, Solver());
  EXPECT_EQ(ww.name(), "ww");
  EXPECT_TRUE(ww.has_tickets());
  EXPECT_THROW(ww(ticks({0, 0})), std::invalid_argument);
  EXPECT_EQ(make_constant_mechanism(3, g)(ticks({1, 1, 1})).selected(), AgentSet());
  const Outcome posted = make_posted_price(3, g, Money(2))(ticks({1, 3, 2}));
  EXPECT_EQ(posted.allocation, bits({1, 0, 1}));
  EXPECT_EQ(posted.payments, ticks({2, 0, 2}));
  EXPECT_THROW(make_posted_price(3, g, Money(5)), std::invalid_argument);
  EXPECT_THROW(make_willy_wonka(make_table(2, std::vector<Rational>{0, 1, 1, 1}), g,
                                Solver(SolverMethod::additive_dp)),
               IncompatibleValuation);
}

}  // namespace
}  // namespace budgetmech
