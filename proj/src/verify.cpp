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


#include "budgetmech/verify.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>

#include "budgetmech/errors.hpp"

namespace budgetmech {
namespace {

struct Extreme {
  std::optional<std::int64_t> value;
  std::uint64_t index = 0;

  void take_max(std::int64_t v, std::uint64_t idx) {
    if (!value || v > *value) {
      value = v;
      index = idx;
    }
  }
  void take_min(std::int64_t v, std::uint64_t idx) {
    if (!value || v < *value) {
      value = v;
      index = idx;
    }
  }
};

// Payment extremes of one agent at one declared cost, over all c_{-i},
// split by whether the agent is selected.
struct Slot {
  Extreme max_sel, max_unsel, min_sel, min_unsel;

  void add(const Outcome& o, std::size_t agent, std::uint64_t idx) {
    const std::int64_t p = o.payments[agent].ticks();
    if (o.allocation[agent]) {
      max_sel.take_max(p, idx);
      min_sel.take_min(p, idx);
    } else {
      max_unsel.take_max(p, idx);
      min_unsel.take_min(p, idx);
    }
  }
  bool ever_selected() const { return max_sel.value.has_value(); }
  bool always_selected() const { return !max_unsel.value.has_value(); }
  std::int64_t max_pay() const {
    return std::max(max_sel.value.value_or(INT64_MIN), max_unsel.value.value_or(INT64_MIN));
  }
  std::int64_t min_pay() const {
    return std::min(min_sel.value.value_or(INT64_MAX), min_unsel.value.value_or(INT64_MAX));
  }
  // Best and worst utility for true cost t with the attaining profile index.
  std::pair<std::int64_t, std::uint64_t> best(std::int64_t t) const {
    std::optional<std::pair<std::int64_t, std::uint64_t>> r;
    if (max_sel.value) r = {*max_sel.value - t, max_sel.index};
    if (max_unsel.value) {
      const std::pair<std::int64_t, std::uint64_t> u{*max_unsel.value, max_unsel.index};
      if (!r || u.first > r->first || (u.first == r->first && u.second < r->second)) r = u;
    }
    return *r;
  }
  std::pair<std::int64_t, std::uint64_t> worst(std::int64_t t) const {
    std::optional<std::pair<std::int64_t, std::uint64_t>> r;
    if (min_sel.value) r = {*min_sel.value - t, min_sel.index};
    if (min_unsel.value) {
      const std::pair<std::int64_t, std::uint64_t> u{*min_unsel.value, min_unsel.index};
      if (!r || u.first < r->first || (u.first == r->first && u.second < r->second)) r = u;
    }
    return *r;
  }
};

using AgentSlots = std::vector<Slot>;  // indexed by declared cost in ticks

std::vector<AgentSlots> aggregate(const OutcomeTable& table) {
  const auto points = static_cast<std::size_t>(table.grid().points());
  std::vector<AgentSlots> slots(table.n(), AgentSlots(points));
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    const CostProfile c = table.profile(idx);
    const Outcome& o = table.at(idx);
    for (std::size_t i = 0; i < table.n(); ++i) {
      slots[i][static_cast<std::size_t>(c[i].ticks())].add(o, i, idx);
    }
  }
  return slots;
}

// Direct evaluation of one agent's slots, bypassing any table.
AgentSlots direct_slots(const Mechanism& mechanism, std::size_t agent) {
  const auto points = static_cast<std::size_t>(mechanism.grid().points());
  AgentSlots slots(points);
  std::uint64_t idx = 0;
  for (const CostProfile& c : enumerate_profiles(mechanism.grid(), mechanism.n())) {
    slots[static_cast<std::size_t>(c[agent].ticks())].add(mechanism(c), agent, idx++);
  }
  return slots;
}

struct Boundary {
  Money threshold;
  std::string disjunct;
};

std::optional<Boundary> find_gt_threshold(const AgentSlots& s) {
  const auto points = static_cast<std::int64_t>(s.size());
  for (std::int64_t b = 0; b < points; ++b) {
    bool ok = true;
    for (std::int64_t d = b + 1; d < points && ok; ++d) ok = !s[d].ever_selected();
    for (std::int64_t d = 0; d < b && ok; ++d) ok = s[d].max_pay() == b;
    if (!ok) continue;
    if (s[b].max_pay() == b) return Boundary{Money(b), "payment_equals_threshold"};
    if (!s[b].ever_selected()) return Boundary{Money(b), "never_selected"};
  }
  return std::nullopt;
}

std::optional<Boundary> find_ws_threshold(const AgentSlots& s) {
  const auto points = static_cast<std::int64_t>(s.size());
  for (std::int64_t w = 0; w < points; ++w) {
    bool ok = true;
    for (std::int64_t d = w + 1; d < points && ok; ++d) ok = !s[d].always_selected();
    for (std::int64_t d = 0; d < w && ok; ++d) {
      ok = s[d].always_selected() && s[d].min_pay() == w;
    }
    if (!ok) continue;
    if (s[w].min_pay() == w) return Boundary{Money(w), "payment_equals_threshold"};
    if (!s[w].always_selected()) return Boundary{Money(w), "sometimes_rejected"};
  }
  return std::nullopt;
}

// First declared cost violating the restricted golden ticket payment rule.
std::optional<std::int64_t> rgt_violation(const AgentSlots& s) {
  std::int64_t global = INT64_MIN;
  for (const Slot& slot : s) global = std::max(global, slot.max_pay());
  for (std::size_t d = 0; d < s.size(); ++d) {
    const bool never = !s[d].ever_selected() && global <= static_cast<std::int64_t>(d);
    const bool reaches = s[d].max_sel.value && *s[d].max_sel.value == global;
    if (!never && !reaches) return static_cast<std::int64_t>(d);
  }
  return std::nullopt;
}

PropertyReport start(const OutcomeTable& table, std::string name) {
  PropertyReport r;
  r.property = std::move(name);
  r.profiles_scanned = table.size();
  return r;
}

void fail(PropertyReport& r, Witness w) {
  r.holds = false;
  r.witness = std::move(w);
}

CostProfile with_cost(CostProfile c, std::size_t agent, Money cost) {
  c[agent] = cost;
  return c;
}

std::int64_t utility_ticks(Money t, const Outcome& o, std::size_t agent) {
  return o.payments[agent].ticks() - (o.allocation[agent] ? t.ticks() : 0);
}

}  // namespace

void require_scan_guard(const CostGrid& grid, std::size_t n) {
  std::uint64_t evaluations = 0;
  bool overflow = false;
  try {
    evaluations = grid.profile_count(n + 1);
  } catch (const std::overflow_error&) {
    overflow = true;
  }
  if (overflow || evaluations > kMaxScanEvaluations) {
    throw GuardExceeded("scan", "grid scan refuses (K+1)^(n+1) = " +
                                    (overflow ? std::string("overflow")
                                              : std::to_string(evaluations)) +
                                    " > " + std::to_string(kMaxScanEvaluations) + " (n = " +
                                    std::to_string(n) + ", K = " +
                                    std::to_string(grid.resolution()) + ")");
  }
}

OutcomeTable OutcomeTable::build(const Mechanism& mechanism, unsigned jobs) {
  require_scan_guard(mechanism.grid(), mechanism.n());
  OutcomeTable table(mechanism);
  const std::uint64_t total = mechanism.grid().profile_count(mechanism.n());
  table.outcomes_.resize(total);
  const auto fill = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      table.outcomes_[idx] = mechanism(profile_at(mechanism.grid(), mechanism.n(), idx));
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || total < 2 * jobs) {
    fill(0, total);
    return table;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  const std::uint64_t chunk = (total + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t begin = std::min(total, w * chunk);
    const std::uint64_t end = std::min(total, begin + chunk);
    workers.emplace_back([&, w, begin, end] {
      try {
        fill(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : workers) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return table;
}

PropertyReport check_ir(const OutcomeTable& table) {
  PropertyReport r = start(table, "ir");
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    const Outcome& o = table.at(idx);
    const CostProfile c = table.profile(idx);
    for (std::size_t i = 0; i < table.n(); ++i) {
      if (o.allocation[i] && o.payments[i] < c[i]) {
        fail(r, Witness{i, std::nullopt, c[i], c, std::nullopt,
                        "selected agent paid " + std::to_string(o.payments[i].ticks()) +
                            " below declared cost " + std::to_string(c[i].ticks())});
        return r;
      }
    }
  }
  return r;
}

PropertyReport check_np(const OutcomeTable& table) {
  PropertyReport r = start(table, "np");
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    const Outcome& o = table.at(idx);
    for (std::size_t i = 0; i < table.n(); ++i) {
      if (!o.allocation[i] && o.payments[i].ticks() != 0) {
        const CostProfile c = table.profile(idx);
        fail(r, Witness{i, std::nullopt, c[i], c, std::nullopt,
                        "rejected agent paid " + std::to_string(o.payments[i].ticks())});
        return r;
      }
    }
  }
  return r;
}

PropertyReport check_bf(const OutcomeTable& table) {
  PropertyReport r = start(table, "bf");
  const Money budget = table.grid().budget();
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    const Money total = table.at(idx).total_payment();
    if (total > budget) {
      fail(r, Witness{0, std::nullopt, std::nullopt, table.profile(idx), std::nullopt,
                      "total payment " + std::to_string(total.ticks()) + " exceeds budget " +
                          std::to_string(budget.ticks())});
      return r;
    }
  }
  return r;
}

PropertyReport check_bnom_direct(const OutcomeTable& table) {
  PropertyReport r = start(table, "bnom");
  const auto slots = aggregate(table);
  const std::int64_t points = table.grid().points();
  for (std::size_t i = 0; i < table.n(); ++i) {
    for (std::int64_t t = 0; t < points; ++t) {
      const auto truthful = slots[i][static_cast<std::size_t>(t)].best(t);
      for (std::int64_t d = 0; d < points; ++d) {
        const auto lie = slots[i][static_cast<std::size_t>(d)].best(t);
        if (lie.first > truthful.first) {
          fail(r, Witness{i, Money(t), Money(d), table.profile(lie.second),
                          table.profile(truthful.second),
                          "best case of lying " + std::to_string(lie.first) +
                              " exceeds truthful best case " + std::to_string(truthful.first)});
          return r;
        }
      }
    }
  }
  return r;
}

PropertyReport check_wnom_direct(const OutcomeTable& table) {
  PropertyReport r = start(table, "wnom");
  const auto slots = aggregate(table);
  const std::int64_t points = table.grid().points();
  for (std::size_t i = 0; i < table.n(); ++i) {
    for (std::int64_t t = 0; t < points; ++t) {
      const auto truthful = slots[i][static_cast<std::size_t>(t)].worst(t);
      for (std::int64_t d = 0; d < points; ++d) {
        const auto lie = slots[i][static_cast<std::size_t>(d)].worst(t);
        if (lie.first > truthful.first) {
          fail(r, Witness{i, Money(t), Money(d), table.profile(lie.second),
                          table.profile(truthful.second),
                          "worst case of lying " + std::to_string(lie.first) +
                              " exceeds truthful worst case " + std::to_string(truthful.first)});
          return r;
        }
      }
    }
  }
  return r;
}

PropertyReport check_threshold_gt(const OutcomeTable& table) {
  PropertyReport r = start(table, "gt");
  const auto slots = aggregate(table);
  ThresholdCertificate cert;
  for (std::size_t i = 0; i < table.n(); ++i) {
    const auto b = find_gt_threshold(slots[i]);
    cert.thresholds.push_back(b ? std::optional<Money>(b->threshold) : std::nullopt);
    cert.boundary.push_back(b ? b->disjunct : "none");
    if (!b && r.holds) {
      fail(r, Witness{i, std::nullopt, std::nullopt, {}, std::nullopt,
                      "no grid threshold golden ticket for agent " + std::to_string(i + 1)});
    }
  }
  r.certificate = std::move(cert);
  return r;
}

PropertyReport check_restricted_gt_payments(const OutcomeTable& table) {
  PropertyReport r = start(table, "rgt");
  const auto slots = aggregate(table);
  for (std::size_t i = 0; i < table.n(); ++i) {
    if (auto d = rgt_violation(slots[i])) {
      CostProfile example(table.n(), Money(0));
      example[i] = Money(*d);
      fail(r, Witness{i, std::nullopt, Money(*d), example, std::nullopt,
                      "declared cost neither excludes the agent nor reaches its global "
                      "maximum payment"});
      return r;
    }
  }
  return r;
}

PropertyReport check_threshold_ws(const OutcomeTable& table) {
  PropertyReport r = start(table, "ws");
  const auto slots = aggregate(table);
  ThresholdCertificate cert;
  for (std::size_t i = 0; i < table.n(); ++i) {
    const auto w = find_ws_threshold(slots[i]);
    cert.thresholds.push_back(w ? std::optional<Money>(w->threshold) : std::nullopt);
    cert.boundary.push_back(w ? w->disjunct : "none");
    if (!w && r.holds) {
      fail(r, Witness{i, std::nullopt, std::nullopt, {}, std::nullopt,
                      "no grid threshold wooden spoon for agent " + std::to_string(i + 1)});
    }
  }
  r.certificate = std::move(cert);
  return r;
}

PropertyReport run_property(const OutcomeTable& table, std::string_view property) {
  if (property == "ir") return check_ir(table);
  if (property == "np") return check_np(table);
  if (property == "bf") return check_bf(table);
  if (property == "bnom") return check_bnom_direct(table);
  if (property == "wnom") return check_wnom_direct(table);
  if (property == "gt") return check_threshold_gt(table);
  if (property == "rgt") return check_restricted_gt_payments(table);
  if (property == "ws") return check_threshold_ws(table);
  throw std::invalid_argument("unknown property \"" + std::string(property) + "\"");
}

bool reverify_witness(const Mechanism& mechanism, const PropertyReport& report) {
  if (report.holds || !report.witness) return false;
  const Witness& w = *report.witness;
  const std::size_t i = w.agent;
  const std::string& p = report.property;
  if (p == "ir") {
    const Outcome o = mechanism(w.profile);
    return o.allocation[i] && o.payments[i] < w.profile[i];
  }
  if (p == "np") {
    const Outcome o = mechanism(w.profile);
    return !o.allocation[i] && o.payments[i].ticks() != 0;
  }
  if (p == "bf") return mechanism(w.profile).total_payment() > mechanism.grid().budget();
  if (p == "bnom" || p == "wnom") {
    if (!w.true_cost || !w.declared || !w.reference) return false;
    const Money t = *w.true_cost;
    const bool best = p == "bnom";
    if (w.profile[i] != *w.declared || (*w.reference)[i] != t) return false;
    // bnom: one lie beats every truthful profile. wnom: one truthful profile
    // is beaten by every lie.
    const std::int64_t pivot = utility_ticks(t, mechanism(best ? w.profile : *w.reference), i);
    for (const CostProfile& others : enumerate_profiles(mechanism.grid(), mechanism.n())) {
      if (others[i].ticks() != 0) continue;
      const CostProfile probe = with_cost(others, i, best ? t : *w.declared);
      const std::int64_t u = utility_ticks(t, mechanism(probe), i);
      if (best ? u >= pivot : u <= pivot) return false;
    }
    return true;
  }
  if (p == "gt") return !find_gt_threshold(direct_slots(mechanism, i)).has_value();
  if (p == "ws") return !find_ws_threshold(direct_slots(mechanism, i)).has_value();
  if (p == "rgt") {
    if (!w.declared) return false;
    std::int64_t global = INT64_MIN;
    for (const CostProfile& c : enumerate_profiles(mechanism.grid(), mechanism.n())) {
      global = std::max(global, mechanism(c).payments[i].ticks());
    }
    bool selected = false;
    bool reaches = false;
    for (const CostProfile& others : enumerate_profiles(mechanism.grid(), mechanism.n())) {
      if (others[i].ticks() != 0) continue;
      const Outcome o = mechanism(with_cost(others, i, *w.declared));
      if (o.allocation[i]) {
        selected = true;
        reaches = reaches || o.payments[i].ticks() == global;
      }
    }
    const bool never = !selected && global <= w.declared->ticks();
    return !never && !reaches;
  }
  return false;
}

std::size_t CrosscheckReport::disagreements() const {
  return static_cast<std::size_t>(
      std::count_if(equivalences.begin(), equivalences.end(),
                    [](const Equivalence& e) { return !e.agree(); }));
}

CrosscheckReport characterization_crosscheck(const OutcomeTable& table) {
  CrosscheckReport out;
  PropertyReport np = check_np(table);
  if (!np.holds) {
    throw PreconditionFailed("np", "crosscheck requires normalized payments; " +
                                       table.mechanism().name() + " violates np");
  }
  PropertyReport ir = check_ir(table);
  PropertyReport bnom = check_bnom_direct(table);
  PropertyReport wnom = check_wnom_direct(table);
  PropertyReport gt = check_threshold_gt(table);
  PropertyReport rgt = check_restricted_gt_payments(table);
  PropertyReport ws = check_threshold_ws(table);
  out.equivalences.push_back({"bnom<=>rgt", "bnom", "rgt", true, bnom.holds, rgt.holds});
  out.equivalences.push_back({"bnom<=>gt", "bnom", "gt", ir.holds, bnom.holds, gt.holds});
  out.equivalences.push_back({"wnom<=>ws", "wnom", "ws", ir.holds, wnom.holds, ws.holds});
  for (PropertyReport* r : {&np, &ir, &bnom, &wnom, &gt, &rgt, &ws}) {
    out.reports.push_back(std::move(*r));
  }
  return out;
}

Ratio Ratio::of(const Rational& optimum, const Rational& achieved) {
  if (sgn(achieved) == 0) return sgn(optimum) == 0 ? Ratio{} : inf();
  Rational q = optimum / achieved;
  q.canonicalize();
  return Ratio{false, q};
}

std::string Ratio::str() const { return infinite ? "+inf" : format_rational(value); }

std::string Ratio::decimal(int digits) const {
  return infinite ? "+inf" : format_decimal(value, digits);
}

std::strong_ordering Ratio::compare(const Rational& bound) const {
  if (infinite) return std::strong_ordering::greater;
  const int c = cmp(value, bound);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering Ratio::compare_to_phi() const {
  if (infinite) return std::strong_ordering::greater;
  return compare_ratio_to_phi(value, Rational(1));
}

bool Ratio::operator<(const Ratio& other) const {
  if (infinite) return false;
  if (other.infinite) return true;
  return value < other.value;
}

bool Ratio::operator==(const Ratio& other) const {
  return infinite == other.infinite && (infinite || value == other.value);
}

Ratio approx_ratio(const Outcome& outcome, const Instance& instance,
                   const FeasibilityFamily& family) {
  const Rational optimum = solve_exact(instance, family).value;
  return Ratio::of(optimum, instance.valuation.value(outcome.selected()));
}

Ratio approx_ratio(const Mechanism& mechanism, const Instance& instance,
                   const FeasibilityFamily& family) {
  return approx_ratio(mechanism(instance.costs), instance, family);
}

Ratio mixture_ratio(const std::vector<Outcome>& outcomes, const Instance& instance) {
  if (outcomes.empty()) throw std::invalid_argument("mixture needs at least one outcome");
  Rational total = 0;
  for (const Outcome& o : outcomes) total += instance.valuation.value(o.selected());
  const Rational optimum = solve_exact(instance).value;
  return Ratio::of(optimum * static_cast<long>(outcomes.size()), total);
}

WorstCase worst_case_ratio(const OutcomeTable& table, const ValuationOracle& valuation,
                           const FeasibilityFamily& family) {
  WorstCase wc;
  Rational sum = 0;
  bool any_infinite = false;
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    const CostProfile c = table.profile(idx);
    const Ratio r = approx_ratio(table.at(idx), make_instance(valuation, table.grid(), c), family);
    if (idx == 0 || wc.worst < r) {
      wc.worst = r;
      wc.witness = c;
    }
    if (r.infinite) {
      any_infinite = true;
    } else {
      sum += r.value;
    }
  }
  wc.profiles = table.size();
  if (!any_infinite && table.size() > 0) {
    Rational mean = sum / static_cast<long>(table.size());
    mean.canonicalize();
    wc.mean = mean;
  }
  return wc;
}

std::string_view to_string(Mutation mutation) {
  switch (mutation) {
    case Mutation::no_golden_ticket: return "no_golden_ticket";
    case Mutation::no_wooden_spoon: return "no_wooden_spoon";
    case Mutation::underpay: return "underpay";
    case Mutation::consolation: return "consolation";
    case Mutation::capped_gt: return "capped_gt";
    case Mutation::double_B: return "double_B";
    case Mutation::always_select_all: return "always_select_all";
  }
  return "unknown";
}

const std::vector<Mutation>& all_mutations() {
  static const std::vector<Mutation> all = {
      Mutation::no_golden_ticket, Mutation::no_wooden_spoon, Mutation::underpay,
      Mutation::consolation,      Mutation::capped_gt,       Mutation::double_B,
      Mutation::always_select_all};
  return all;
}

Mutation parse_mutation(std::string_view name) {
  for (Mutation m : all_mutations()) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown mutation \"" + std::string(name) + "\"");
}

std::string_view targeted_property(Mutation mutation) {
  switch (mutation) {
    case Mutation::no_golden_ticket: return "bnom";
    case Mutation::no_wooden_spoon: return "wnom";
    case Mutation::underpay: return "ir";
    case Mutation::consolation: return "np";
    case Mutation::capped_gt: return "bnom";
    case Mutation::double_B: return "bf";
    case Mutation::always_select_all: return "ws";
  }
  return "";
}

Mechanism make_mutant(const Mechanism& base, Mutation mutation) {
  const std::string name = base.name() + "+" + std::string(to_string(mutation));
  const Money budget = base.grid().budget();
  const std::size_t n = base.n();
  const auto require_tickets = [&] {
    if (!base.has_tickets()) {
      throw std::invalid_argument(base.name() + " has no tickets to mutate");
    }
  };
  switch (mutation) {
    case Mutation::no_golden_ticket: {
      require_tickets();
      TicketOptions o = base.options();
      o.golden_tickets = false;
      return base.with_options(name, o);
    }
    case Mutation::no_wooden_spoon: {
      require_tickets();
      TicketOptions o = base.options();
      o.wooden_spoons = false;
      return base.with_options(name, o);
    }
    case Mutation::underpay:
      return base.wrapped(name, [](const CostProfile& c, Outcome o) {
        for (std::size_t i = 0; i < o.n(); ++i) {
          if (o.allocation[i]) o.payments[i] = Money(std::max<std::int64_t>(0, c[i].ticks() - 1));
        }
        return o;
      });
    case Mutation::consolation:
      return base.wrapped(name, [budget](const CostProfile&, Outcome o) {
        if (!o.allocation[0] && o.payments[0].ticks() == 0 && o.total_payment() < budget) {
          o.payments[0] = Money(1);
        }
        return o;
      });
    case Mutation::capped_gt:
      require_tickets();
      return base.wrapped(name, [budget](const CostProfile&, Outcome o) {
        if (o.branch != "golden_ticket") return o;
        for (Money& p : o.payments) {
          if (p == budget) p = Money(budget.ticks() - 1);
        }
        return o;
      });
    case Mutation::double_B:
      if (n < 2) throw std::invalid_argument("double_B needs at least two agents");
      return base.wrapped(name, [budget, n](const CostProfile& c, Outcome o) {
        if (std::any_of(c.begin(), c.end(), [&](Money m) { return m != budget; })) return o;
        Outcome out = Outcome::empty(n, "double_B");
        out.select(0, budget);
        out.select(1, budget);
        return out;
      });
    case Mutation::always_select_all:
      return Mechanism(
          name, n, base.grid(),
          [n](const CostProfile& c, const TicketOptions&) {
            Outcome out = Outcome::empty(n, "select_all");
            for (std::size_t i = 0; i < n; ++i) out.select(i, c[i]);
            return out;
          },
          false);
  }
  throw std::invalid_argument("unknown mutation");
}

}  // namespace budgetmech
