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


#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "budgetmech/cli.hpp"

namespace budgetmech::cli {
namespace {

using nlohmann::json;

json profile_json(const CostProfile& profile) {
  json out = json::array();
  for (Money m : profile) out.push_back(m.ticks());
  return out;
}

json optional_money(const std::optional<Money>& m) {
  return m ? json(m->ticks()) : json(nullptr);
}

}  // namespace

Mechanism build_mechanism(const MechanismConfig& config, const ValuationOracle& valuation,
                          const CostGrid& grid) {
  if (config.name == "ww") return make_willy_wonka(valuation, grid, config.solver);
  if (config.name == "moww") return make_max_or_willy_wonka(valuation, grid, config.solver);
  if (config.name == "moww-constrained") {
    return make_max_or_willy_wonka_constrained(valuation, grid, config.family);
  }
  if (config.name == "golden") return make_golden_mechanism(valuation, grid);
  if (config.name == "mr") {
    TicketMode mode = ContinuousDraw{};
    if (config.ell) {
      if (config.spec_index >= *config.ell) {
        throw ParseError("--spec-index must be smaller than --ell");
      }
      mode = FiniteFamily{*config.ell, config.spec_index};
    }
    return make_randomized_mr(valuation, grid, config.solver,
                              make_ticket_spec(valuation.n(), grid, config.seed, mode));
  }
  throw ParseError("unknown mechanism \"" + config.name + "\"");
}

RunReport make_run_report(const Mechanism& mechanism, const InstanceFile& file) {
  const FeasibilityFamily family = file.family();
  RunReport report;
  report.mechanism = mechanism.name();
  report.outcome = mechanism(file.instance.costs);
  report.value = file.instance.valuation.value(report.outcome.selected());
  report.optimum = solve_exact(file.instance, family).value;
  report.ratio = Ratio::of(report.optimum, report.value);
  return report;
}

std::string render_run_json(const RunReport& report) {
  json doc;
  doc["mechanism"] = report.mechanism;
  doc["branch"] = report.outcome.branch;
  json x = json::array();
  for (bool selected : report.outcome.allocation) x.push_back(selected ? 1 : 0);
  doc["x"] = x;
  doc["p_ticks"] = profile_json(report.outcome.payments);
  doc["selected"] = format_agent_set(report.outcome.selected());
  doc["total_payment_ticks"] = report.outcome.total_payment().ticks();
  doc["value"] = format_rational(report.value);
  doc["optimum"] = format_rational(report.optimum);
  doc["ratio"] = report.ratio.str();
  doc["ratio_decimal"] = report.ratio.decimal();
  return doc.dump(2) + "\n";
}

std::string render_run_csv(const RunReport& report) {
  const std::size_t n = report.outcome.n();
  std::ostringstream out;
  out << "mechanism,branch";
  for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",p" << i;
  out << ",total_payment,value,optimum,ratio,ratio_decimal\n";
  out << report.mechanism << ',' << report.outcome.branch;
  for (bool selected : report.outcome.allocation) out << ',' << (selected ? 1 : 0);
  for (Money p : report.outcome.payments) out << ',' << p.ticks();
  out << ',' << report.outcome.total_payment().ticks() << ',' << format_rational(report.value)
      << ',' << format_rational(report.optimum) << ',' << report.ratio.str() << ','
      << report.ratio.decimal() << '\n';
  return out.str();
}

std::string render_property_json(const PropertyReport& report) {
  json doc;
  doc["property"] = report.property;
  doc["holds"] = report.holds;
  doc["profiles_scanned"] = report.profiles_scanned;
  if (report.witness) {
    const Witness& w = *report.witness;
    json wj;
    wj["agent"] = w.agent + 1;
    wj["true_cost"] = optional_money(w.true_cost);
    wj["declared"] = optional_money(w.declared);
    wj["profile"] = profile_json(w.profile);
    wj["reference"] = w.reference ? profile_json(*w.reference) : json(nullptr);
    wj["detail"] = w.detail;
    doc["witness"] = wj;
  } else {
    doc["witness"] = nullptr;
  }
  if (report.certificate) {
    json thresholds = json::array();
    for (const auto& t : report.certificate->thresholds) thresholds.push_back(optional_money(t));
    doc["certificate"] = {{"thresholds", thresholds},
                          {"boundary", report.certificate->boundary}};
  }
  return doc.dump();
}

unsigned default_jobs() {
  const char* env = std::getenv("BUDGETMECH_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long jobs = std::strtoul(env, &end, 10);
  if (*end != '\0' || jobs < 1 || jobs > 1024) {
    throw ParseError("BUDGETMECH_JOBS must be an integer in 1..1024");
  }
  return static_cast<unsigned>(jobs);
}

}  // namespace budgetmech::cli
