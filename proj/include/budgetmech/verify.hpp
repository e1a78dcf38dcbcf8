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

// Exhaustive grid verification: incentive and payment properties, threshold
// characterizations, approximation ratios and negative-control mutants.
//
// Every checker scans the profiles of an OutcomeTable in enumeration order
// and reports the first violation it meets, so witnesses are reproducible
// regardless of the number of worker threads used to fill the table.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "budgetmech/domain.hpp"
#include "budgetmech/errors.hpp"
#include "budgetmech/instance.hpp"
#include "budgetmech/mechanisms.hpp"
#include "budgetmech/packing.hpp"

namespace budgetmech {

/// Largest admissible (K+1)^(n+1) for a full grid scan.
inline constexpr std::uint64_t kMaxScanEvaluations = 2'000'000;

/// Throws GuardExceeded("scan") when a scan of n agents on `grid` is too large.
void require_scan_guard(const CostGrid& grid, std::size_t n);

/// The mechanism's outcome on every grid profile, indexed by profile_index.
class OutcomeTable {
 public:
  /// Evaluates all (K+1)^n profiles using `jobs` worker threads (0 means 1).
  static OutcomeTable build(const Mechanism& mechanism, unsigned jobs = 1);

  const Mechanism& mechanism() const { return mechanism_; }
  const CostGrid& grid() const { return mechanism_.grid(); }
  std::size_t n() const { return mechanism_.n(); }
  std::uint64_t size() const { return outcomes_.size(); }
  const Outcome& at(std::uint64_t index) const { return outcomes_[index]; }
  CostProfile profile(std::uint64_t index) const { return profile_at(grid(), n(), index); }

 private:
  explicit OutcomeTable(Mechanism mechanism) : mechanism_(std::move(mechanism)) {}
  Mechanism mechanism_;
  std::vector<Outcome> outcomes_;
};

/// A counterexample. `profile` is the profile whose outcome exhibits the
/// violation; `reference` is the truthful profile it is compared against
/// (best case for bnom, worst case for wnom).
struct Witness {
  std::size_t agent = 0;
  std::optional<Money> true_cost;
  std::optional<Money> declared;
  CostProfile profile;
  std::optional<CostProfile> reference;
  std::string detail;
};

/// Per-agent thresholds (b_i or w_i) and which boundary disjunct holds.
struct ThresholdCertificate {
  std::vector<std::optional<Money>> thresholds;
  std::vector<std::string> boundary;
};

struct PropertyReport {
  std::string property;
  bool holds = true;
  std::optional<Witness> witness;
  std::uint64_t profiles_scanned = 0;
  std::optional<ThresholdCertificate> certificate;
};

/// p_i >= c_i x_i everywhere.
PropertyReport check_ir(const OutcomeTable& table);
/// p_i = 0 whenever x_i = 0.
PropertyReport check_np(const OutcomeTable& table);
/// sum_i p_i <= B everywhere.
PropertyReport check_bf(const OutcomeTable& table);
/// Best case: max_{c_-i} u^t(t, c_-i) >= max_{c_-i} u^t(c_i, c_-i) for all i, t, c_i.
PropertyReport check_bnom_direct(const OutcomeTable& table);
/// Worst case: the same with min in place of max.
PropertyReport check_wnom_direct(const OutcomeTable& table);
/// Searches b_i in 0..K: above b_i never selected, below b_i the best
/// payment is b_i, at b_i either holds.
PropertyReport check_threshold_gt(const OutcomeTable& table);
/// Per agent and declared cost: never selected with global max payment <= c_i,
/// or selected somewhere with the global max payment.
PropertyReport check_restricted_gt_payments(const OutcomeTable& table);
/// Searches w_i in 0..K: above w_i sometimes rejected, below w_i always
/// selected with worst payment w_i, at w_i either holds.
PropertyReport check_threshold_ws(const OutcomeTable& table);

/// Property names accepted by run_property: ir, np, bf, bnom, wnom, gt, rgt, ws.
PropertyReport run_property(const OutcomeTable& table, std::string_view property);

/// Re-checks a failing report with direct mechanism calls only.
bool reverify_witness(const Mechanism& mechanism, const PropertyReport& report);

struct Equivalence {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool checked = false;
  bool lhs_holds = false;
  bool rhs_holds = false;
  bool agree() const { return !checked || lhs_holds == rhs_holds; }
};

struct CrosscheckReport {
  std::vector<PropertyReport> reports;
  std::vector<Equivalence> equivalences;
  std::size_t disagreements() const;
};

/// bnom <=> rgt (requires NP), bnom <=> gt and wnom <=> ws (require NP and
/// IR). Throws PreconditionFailed("np") when NP fails; when IR fails the two
/// IR equivalences are reported unchecked.
CrosscheckReport characterization_crosscheck(const OutcomeTable& table);

/// An approximation ratio V(X*) / V(X), or +inf when V(X) = 0 < V(X*).
struct Ratio {
  bool infinite = false;
  Rational value = 1;

  static Ratio inf() { return Ratio{true, 0}; }
  static Ratio of(const Rational& optimum, const Rational& achieved);
  std::string str() const;
  std::string decimal(int digits = 6) const;
  std::strong_ordering compare(const Rational& bound) const;
  std::strong_ordering compare_to_phi() const;
  bool operator<(const Ratio& other) const;
  bool operator==(const Ratio& other) const;
};

Ratio approx_ratio(const Outcome& outcome, const Instance& instance,
                   const FeasibilityFamily& family = FeasibilityFamily::all());
Ratio approx_ratio(const Mechanism& mechanism, const Instance& instance,
                   const FeasibilityFamily& family = FeasibilityFamily::all());

/// V(X*) / (mean over outcomes of V(X)), the ratio of expectations of a
/// uniform mixture of mechanisms.
Ratio mixture_ratio(const std::vector<Outcome>& outcomes, const Instance& instance);

struct WorstCase {
  Ratio worst;
  CostProfile witness;
  /// Mean of the finite per-profile ratios; nullopt if some ratio is +inf.
  std::optional<Rational> mean;
  std::uint64_t profiles = 0;
};

/// Maximum approx_ratio over the table; the witness is the first maximizer.
WorstCase worst_case_ratio(const OutcomeTable& table, const ValuationOracle& valuation,
                           const FeasibilityFamily& family = FeasibilityFamily::all());

enum class Mutation {
  no_golden_ticket,
  no_wooden_spoon,
  underpay,
  consolation,
  capped_gt,
  double_B,
  always_select_all
};

std::string_view to_string(Mutation mutation);
/// Throws std::invalid_argument on unknown names.
Mutation parse_mutation(std::string_view name);
const std::vector<Mutation>& all_mutations();
/// The property each mutant is built to break (a run_property name).
std::string_view targeted_property(Mutation mutation);

/// Wraps `base` with the named defect. Ticket mutations throw
/// std::invalid_argument for mechanisms without tickets; double_B needs n >= 2.
Mechanism make_mutant(const Mechanism& base, Mutation mutation);

}  // namespace budgetmech
