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

#include <gtest/gtest.h>

#include "budgetmech/errors.hpp"
#include "budgetmech/generators.hpp"
#include "budgetmech/verify.hpp"

namespace budgetmech {
namespace {

CostProfile ticks(std::initializer_list<std::int64_t> values) {
  CostProfile out;
  for (std::int64_t v : values) out.emplace_back(v);
  return out;
}

const ValuationOracle& table1_valuation() {
  static const ValuationOracle v = make_additive({3, 2, 1});
  return v;
}

Mechanism table1_ww() { return make_willy_wonka(table1_valuation(), CostGrid(4), Solver()); }

PropertyReport check(const Mechanism& m, std::string_view property) {
  return run_property(OutcomeTable::build(m), property);
}

void expect_fails_with_witness(const Mechanism& m, std::string_view property) {
  const PropertyReport r = check(m, property);
  EXPECT_FALSE(r.holds) << m.name() << " " << property;
  ASSERT_TRUE(r.witness) << m.name() << " " << property;
  EXPECT_TRUE(reverify_witness(m, r)) << m.name() << " " << property << ": " << r.witness->detail;
}

TEST(OutcomeTable, CachesEveryProfile) {
  const OutcomeTable t = OutcomeTable::build(table1_ww());
  EXPECT_EQ(t.size(), 125u);
  EXPECT_EQ(t.at(0), table1_ww()(ticks({0, 0, 0})));
  EXPECT_EQ(t.profile(124), ticks({4, 4, 4}));
}

TEST(OutcomeTable, GuardRefusesLargeScans) {
  const Mechanism m = make_constant_mechanism(6, CostGrid(10));
  try {
    OutcomeTable::build(m);
    FAIL() << "expected a guard error";
  } catch (const GuardExceeded& e) {
    EXPECT_EQ(e.guard(), "scan");
  }
}

TEST(OutcomeTable, ParallelBuildIsDeterministic) {
  std::mt19937_64 rng(5);
  const ValuationOracle v = random_subadditive_table(4, rng);
  const Mechanism m = make_willy_wonka(v, CostGrid(4), Solver());
  const OutcomeTable serial = OutcomeTable::build(m, 1);
  const OutcomeTable parallel = OutcomeTable::build(m, 4);
  for (std::uint64_t i = 0; i < serial.size(); ++i) ASSERT_EQ(serial.at(i), parallel.at(i));
  for (const char* p : {"ir", "np", "bf", "bnom", "wnom", "gt", "rgt", "ws"}) {
    const PropertyReport a = run_property(serial, p);
    const PropertyReport b = run_property(parallel, p);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.witness.has_value(), b.witness.has_value());
    if (a.witness && b.witness) { EXPECT_EQ(a.witness->profile, b.witness->profile); }
  }
}

TEST(CheckIr, Examples) {
  EXPECT_TRUE(check(table1_ww(), "ir").holds);
  expect_fails_with_witness(make_mutant(table1_ww(), Mutation::underpay), "ir");
  EXPECT_TRUE(check(make_constant_mechanism(3, CostGrid(4)), "ir").holds);
}

TEST(CheckNp, Examples) {
  EXPECT_TRUE(check(table1_ww(), "np").holds);
  expect_fails_with_witness(make_mutant(table1_ww(), Mutation::consolation), "np");
  EXPECT_TRUE(check(make_golden_mechanism(table1_valuation(), CostGrid(4)), "np").holds);
}

TEST(CheckBf, Examples) {
  EXPECT_TRUE(check(table1_ww(), "bf").holds);
  expect_fails_with_witness(make_mutant(table1_ww(), Mutation::double_B), "bf");
  const CostGrid grid(4);
  for (const TicketSpec& spec : make_ticket_family(3, grid, 3)) {
    const Mechanism mr = make_randomized_mr(table1_valuation(), grid, Solver(), spec);
    EXPECT_TRUE(check(mr, "bf").holds);
  }
}

TEST(CheckBnomDirect, Examples) {
  EXPECT_TRUE(check(table1_ww(), "bnom").holds);
  expect_fails_with_witness(make_mutant(table1_ww(), Mutation::no_golden_ticket), "bnom");
  EXPECT_TRUE(check(make_constant_mechanism(3, CostGrid(4)), "bnom").holds);
}

TEST(CheckWnomDirect, Examples) {
  EXPECT_TRUE(check(table1_ww(), "wnom").holds);
  EXPECT_TRUE(check(make_golden_mechanism(table1_valuation(), CostGrid(4)), "wnom").holds);
  expect_fails_with_witness(make_mutant(table1_ww(), Mutation::no_wooden_spoon), "wnom");
}

TEST(CheckWnomDirect, DeclaringBudgetBeatsTruthfulWorstCase) {
  // Two agents, V({1}) > V({2}): declaring B always earns B for agent 1.
  const Mechanism m = make_willy_wonka(make_additive({2, 1}), CostGrid(2), Solver());
  const PropertyReport r = check(m, "wnom");
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->agent, 0u);
  EXPECT_EQ(r.witness->true_cost, Money(0));
  EXPECT_EQ(r.witness->declared, Money(2));
  EXPECT_TRUE(reverify_witness(m, r));
}

TEST(CheckThresholdGt, MaxOrWithTicketsUsesBudgetThresholds) {
  const Mechanism m = make_max_or_willy_wonka(make_additive({2, 2, 3}), CostGrid(2), Solver());
  const PropertyReport r = check(m, "gt");
  ASSERT_TRUE(r.holds);
  ASSERT_TRUE(r.certificate);
  for (const auto& b : r.certificate->thresholds) EXPECT_EQ(b, Money(2));
}

TEST(CheckThresholdGt, MissingGoldenTicketHasNoThreshold) {
  const PropertyReport r = check(make_mutant(table1_ww(), Mutation::no_golden_ticket), "gt");
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
}

TEST(CheckThresholdGt, PostedPriceSingleAgent) {
  const PropertyReport r = check(make_posted_price(1, CostGrid(4), Money(2)), "gt");
  ASSERT_TRUE(r.holds);
  EXPECT_EQ(r.certificate->thresholds.at(0), Money(2));
}

TEST(CheckRestrictedGt, Examples) {
  EXPECT_TRUE(check(table1_ww(), "rgt").holds);
  const Mechanism capped = make_mutant(table1_ww(), Mutation::capped_gt);
  expect_fails_with_witness(capped, "rgt");
  EXPECT_FALSE(check(capped, "bnom").holds);
  EXPECT_TRUE(check(make_constant_mechanism(3, CostGrid(4)), "rgt").holds);
}

TEST(CheckThresholdWs, GoldenMechanism) {
  const PropertyReport r = check(make_golden_mechanism(table1_valuation(), CostGrid(4)), "ws");
  ASSERT_TRUE(r.holds);
  EXPECT_EQ(r.certificate->thresholds.at(1), Money(0));
  EXPECT_EQ(r.certificate->thresholds.at(2), Money(0));
}

TEST(CheckThresholdWs, WillyWonkaZeroThresholds) {
  const PropertyReport r = check(table1_ww(), "ws");
  ASSERT_TRUE(r.holds);
  for (const auto& w : r.certificate->thresholds) EXPECT_EQ(w, Money(0));
}

TEST(CheckThresholdWs, SelectAllHasNoThreshold) {
  expect_fails_with_witness(make_mutant(table1_ww(), Mutation::always_select_all), "ws");
}

TEST(RunProperty, UnknownName) {
  EXPECT_THROW(run_property(OutcomeTable::build(table1_ww()), "sp"), std::invalid_argument);
}

TEST(Crosscheck, WillyWonkaAllTrue) {
  const CrosscheckReport r = characterization_crosscheck(OutcomeTable::build(table1_ww()));
  EXPECT_EQ(r.disagreements(), 0u);
  for (const Equivalence& e : r.equivalences) {
    EXPECT_TRUE(e.checked);
    EXPECT_TRUE(e.lhs_holds && e.rhs_holds) << e.name;
  }
}

TEST(Crosscheck, MutantsAgreeOnFalse) {
  const CrosscheckReport gt =
      characterization_crosscheck(OutcomeTable::build(make_mutant(table1_ww(), Mutation::no_golden_ticket)));
  EXPECT_EQ(gt.disagreements(), 0u);
  for (const Equivalence& e : gt.equivalences) {
    if (e.lhs == "bnom") { EXPECT_FALSE(e.lhs_holds || e.rhs_holds) << e.name; }
  }
  const CrosscheckReport ws =
      characterization_crosscheck(OutcomeTable::build(make_mutant(table1_ww(), Mutation::no_wooden_spoon)));
  EXPECT_EQ(ws.disagreements(), 0u);
  for (const Equivalence& e : ws.equivalences) {
    if (e.lhs == "wnom") { EXPECT_FALSE(e.lhs_holds || e.rhs_holds) << e.name; }
  }
}

TEST(Crosscheck, RefusesWithoutNp) {
  try {
    characterization_crosscheck(OutcomeTable::build(make_mutant(table1_ww(), Mutation::consolation)));
    FAIL() << "expected a precondition error";
  } catch (const PreconditionFailed& e) {
    EXPECT_EQ(e.property(), "np");
  }
}

TEST(Ratio, Sentinels) {
  EXPECT_EQ(Ratio::of(0, 0), Ratio::of(1, 1));
  EXPECT_TRUE(Ratio::of(1, 0).infinite);
  EXPECT_EQ(Ratio::of(1, 0).str(), "+inf");
  EXPECT_EQ(Ratio::of(3, 2).str(), "3/2");
  EXPECT_LT(Ratio::of(3, 2), Ratio::of(2, 1));
  EXPECT_LT(Ratio::of(100, 1), Ratio::inf());
  EXPECT_EQ(Ratio::of(2, 1).compare_to_phi(), std::strong_ordering::greater);
}

TEST(ApproxRatio, Examples) {
  const Instance opt = make_instance(table1_valuation(), CostGrid(4), ticks({1, 1, 1}));
  EXPECT_EQ(approx_ratio(table1_ww(), opt), Ratio::of(1, 1));
  const Instance pair = make_instance(make_additive({1, 1}), CostGrid(4), ticks({1, 1}));
  EXPECT_EQ(approx_ratio(make_max_or_willy_wonka(pair.valuation, pair.grid, Solver()), pair),
            Ratio::of(2, 1));
}

TEST(ApproxRatio, GoldenWithinPhiOnRandomInstances) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 3);
    const CostGrid grid(trial % 2 == 0 ? 2 : 4);
    const ValuationOracle v = random_subadditive_table(n, rng);
    const Instance inst = make_instance(v, grid, random_profile(grid, n, rng));
    EXPECT_NE(approx_ratio(make_golden_mechanism(v, grid), inst).compare_to_phi(),
              std::strong_ordering::greater)
        << "trial " << trial;
  }
}

TEST(MixtureRatio, RatioOfExpectations) {
  const Instance inst = make_instance(make_additive({1, 1}), CostGrid(4), ticks({1, 1}));
  Outcome both = Outcome::empty(2);
  both.select(0, Money(1));
  both.select(1, Money(1));
  const Outcome none = Outcome::empty(2);
  EXPECT_EQ(mixture_ratio({both, none}, inst), Ratio::of(2, 1));
  EXPECT_EQ(mixture_ratio({both, both}, inst), Ratio::of(1, 1));
  EXPECT_THROW(mixture_ratio({}, inst), std::invalid_argument);
}

TEST(WorstCaseRatio, MaxOrIsTightOnUnitPair) {
  const ValuationOracle v = make_additive({1, 1});
  const WorstCase wc =
      worst_case_ratio(OutcomeTable::build(make_max_or_willy_wonka(v, CostGrid(4), Solver())), v);
  EXPECT_EQ(wc.worst, Ratio::of(2, 1));
  const Instance at = make_instance(v, CostGrid(4), wc.witness);
  EXPECT_EQ(approx_ratio(make_max_or_willy_wonka(v, CostGrid(4), Solver()), at), Ratio::of(2, 1));
}

TEST(WorstCaseRatio, WillyWonkaAloneIsUnbounded) {
  const ValuationOracle v = make_additive({1, 1000});
  const WorstCase wc = worst_case_ratio(OutcomeTable::build(make_willy_wonka(v, CostGrid(4), Solver())), v);
  EXPECT_EQ(wc.worst.compare(2), std::strong_ordering::greater);
  EXPECT_EQ(wc.worst, Ratio::of(1001, 1));
}

TEST(WorstCaseRatio, GoldenNearPhiOnNearGoldenPair) {
  const ValuationOracle v = make_additive({Rational(1618, 1000), 1});
  const WorstCase wc = worst_case_ratio(OutcomeTable::build(make_golden_mechanism(v, CostGrid(8))), v);
  EXPECT_NE(wc.worst.compare_to_phi(), std::strong_ordering::greater);
  EXPECT_NE(wc.worst.compare(Rational(8, 5)), std::strong_ordering::less);
}

TEST(Mutations, NamesAndTargets) {
  EXPECT_EQ(all_mutations().size(), 7u);
  for (Mutation m : all_mutations()) EXPECT_EQ(parse_mutation(to_string(m)), m);
  EXPECT_THROW(parse_mutation("free_lunch"), std::invalid_argument);
  EXPECT_EQ(targeted_property(Mutation::double_B), "bf");
  EXPECT_EQ(make_mutant(table1_ww(), Mutation::underpay).name(), "ww+underpay");
  EXPECT_THROW(make_mutant(make_constant_mechanism(2, CostGrid(2)), Mutation::no_golden_ticket),
               std::invalid_argument);
}

TEST(Mutations, UnderpayAndDoubleBOutcomes) {
  const Outcome under = make_mutant(table1_ww(), Mutation::underpay)(ticks({1, 2, 3}));
  EXPECT_EQ(under.payments, ticks({0, 1, 0}));
  const Outcome dbl = make_mutant(table1_ww(), Mutation::double_B)(ticks({4, 4, 4}));
  EXPECT_EQ(dbl.payments, ticks({4, 4, 0}));
  const Outcome gt = make_mutant(table1_ww(), Mutation::no_golden_ticket)(ticks({0, 0, 0}));
  EXPECT_EQ(gt.branch, "wooden_spoon");
  const Outcome solver = make_mutant(table1_ww(), Mutation::no_golden_ticket)(ticks({0, 4, 0}));
  EXPECT_EQ(solver.branch, "solver");
}

}  // namespace
}  // namespace budgetmech
