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


#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "budgetmech/cli.hpp"
#include "budgetmech/errors.hpp"
#include "budgetmech/generators.hpp"

namespace budgetmech::cli {
namespace {

using nlohmann::json;

const std::vector<std::string> kMechanisms = {"ww", "moww", "moww-constrained", "golden", "mr"};
const std::vector<std::string> kProperties = {"ir", "np", "bf",  "bnom",      "wnom",
                                              "gt", "ws", "rgt", "crosscheck"};

struct CommonFlags {
  std::string mechanism = "ww";
  std::string solver = "exact";
  std::uint64_t seed = 1;
  std::optional<std::size_t> ell;
  std::size_t spec_index = 0;
};

void add_mechanism_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--mechanism", flags.mechanism, "ww, moww, moww-constrained, golden or mr")
      ->check(CLI::IsMember(kMechanisms));
  cmd->add_option("--solver", flags.solver, "exact, dp or greedy")
      ->check(CLI::IsMember({"exact", "dp", "greedy"}));
  cmd->add_option("--seed", flags.seed, "seed for mr ticket draws and random instances");
  cmd->add_option("--ell", flags.ell, "number of disjoint ticket specs for mr");
  cmd->add_option("--spec-index", flags.spec_index, "which of the --ell specs mr uses");
}

MechanismConfig config_from(const CommonFlags& flags, const FeasibilityFamily& family) {
  MechanismConfig config;
  config.name = flags.mechanism;
  config.solver = Solver(parse_solver_method(flags.solver));
  config.seed = flags.seed;
  config.ell = flags.ell;
  config.spec_index = flags.spec_index;
  config.family = family;
  return config;
}

ValuationOracle random_valuation(ValuationClass cls, std::size_t n, std::mt19937_64& rng) {
  switch (cls) {
    case ValuationClass::additive: return random_additive(n, rng);
    case ValuationClass::subadditive: return random_subadditive_table(n, rng);
    case ValuationClass::submodular: return random_submodular_table(n, rng);
    default:
      throw ParseError("random instances support additive, subadditive or submodular classes");
  }
}

ValuationClass class_flag(const std::string& text) {
  try {
    return parse_valuation_class(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// run

struct RunFlags {
  std::string path;
  CommonFlags common;
  std::string format = "json";
};

int cmd_run(const RunFlags& flags, std::ostream& out) {
  const InstanceFile file = load_instance_file(flags.path);
  const Mechanism mech =
      build_mechanism(config_from(flags.common, file.family()), file.instance.valuation,
                      file.instance.grid);
  const RunReport report = make_run_report(mech, file);
  out << (flags.format == "csv" ? render_run_csv(report) : render_run_json(report));
  return kExitOk;
}

// verify

struct VerifyFlags {
  std::string path;
  std::vector<std::int64_t> random;
  std::string valuation_class = "additive";
  CommonFlags common;
  std::string properties = "ir,np,bf,bnom,wnom,gt,rgt,ws";
  std::string mutate;
  unsigned jobs = 0;
};

json crosscheck_json(const OutcomeTable& table, bool& holds) {
  json doc;
  doc["property"] = "crosscheck";
  try {
    const CrosscheckReport report = characterization_crosscheck(table);
    json eqs = json::array();
    for (const Equivalence& e : report.equivalences) {
      eqs.push_back({{"name", e.name},
                     {"lhs", e.lhs},
                     {"rhs", e.rhs},
                     {"checked", e.checked},
                     {"lhs_holds", e.lhs_holds},
                     {"rhs_holds", e.rhs_holds},
                     {"agree", e.agree()}});
    }
    holds = report.disagreements() == 0;
    doc["holds"] = holds;
    doc["disagreements"] = report.disagreements();
    doc["equivalences"] = eqs;
  } catch (const PreconditionFailed& e) {
    holds = false;
    doc["holds"] = false;
    doc["precondition_failed"] = e.property();
    doc["detail"] = e.what();
  }
  return doc;
}

int cmd_verify(const VerifyFlags& flags, std::ostream& out) {
  const std::vector<std::string> properties = split_list(flags.properties);
  if (properties.empty()) throw ParseError("--properties is empty");
  for (const std::string& p : properties) {
    if (std::find(kProperties.begin(), kProperties.end(), p) == kProperties.end()) {
      throw ParseError("unknown property \"" + p + "\"");
    }
  }
  std::optional<Mutation> mutation;
  if (!flags.mutate.empty()) {
    try {
      mutation = parse_mutation(flags.mutate);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  const unsigned jobs = flags.jobs == 0 ? default_jobs() : flags.jobs;

  std::vector<InstanceFile> instances;
  if (!flags.path.empty()) {
    instances.push_back(load_instance_file(flags.path));
  } else {
    const std::int64_t n = flags.random[0];
    const std::int64_t k = flags.random[1];
    const std::int64_t count = flags.random[2];
    if (n < 1 || n > static_cast<std::int64_t>(kMaxTableAgents) || k < 1 || count < 1 ||
        flags.random[3] < 0) {
      throw ParseError("--random expects n in 1..12, k >= 1, count >= 1, seed >= 0");
    }
    const ValuationClass cls = class_flag(flags.valuation_class);
    std::mt19937_64 rng(static_cast<std::uint64_t>(flags.random[3]));
    const CostGrid grid(k);
    require_scan_guard(grid, static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < count; ++t) {
      ValuationOracle v = random_valuation(cls, static_cast<std::size_t>(n), rng);
      instances.push_back(
          InstanceFile{make_instance(std::move(v), grid, CostProfile(static_cast<std::size_t>(n))),
                       std::nullopt});
    }
  }

  bool all_hold = true;
  json doc;
  json runs = json::array();
  std::string name;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const InstanceFile& file = instances[idx];
    Mechanism mech = build_mechanism(config_from(flags.common, file.family()),
                                     file.instance.valuation, file.instance.grid);
    if (mutation) mech = make_mutant(mech, *mutation);
    name = mech.name();
    const OutcomeTable table = OutcomeTable::build(mech, jobs);
    json reports = json::array();
    for (const std::string& p : properties) {
      bool holds = true;
      if (p == "crosscheck") {
        reports.push_back(crosscheck_json(table, holds));
      } else {
        const PropertyReport report = run_property(table, p);
        holds = report.holds;
        reports.push_back(json::parse(render_property_json(report)));
      }
      all_hold = all_hold && holds;
    }
    runs.push_back({{"instance", idx},
                    {"valuation", file.instance.valuation.fingerprint()},
                    {"properties", reports}});
  }
  doc["mechanism"] = name;
  doc["all_hold"] = all_hold;
  doc["instances"] = runs;
  out << doc.dump(2) << "\n";
  return all_hold ? kExitOk : kExitViolation;
}

// table

struct TableFlags {
  std::string mechanisms = "moww,golden";
  std::string valuation_class = "subadditive";
  std::size_t trials = 5;
  std::size_t n = 3;
  std::int64_t k = 4;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string solver = "exact";
  std::size_t ell = 0;
  unsigned jobs = 0;
};

// Largest ell for which make_ticket_family succeeds, or 0.
std::size_t max_ell(std::size_t n, const CostGrid& grid) {
  if (n < 2) return 0;
  for (auto ell = static_cast<std::size_t>(grid.profile_count(n - 1) / (2 * n)); ell > 0; --ell) {
    try {
      make_ticket_family(n, grid, ell);
      return ell;
    } catch (const std::invalid_argument&) {
    }
  }
  return 0;
}

struct Bound {
  enum class Kind { none, rational, phi } kind = Kind::none;
  Rational value;

  std::string str() const {
    switch (kind) {
      case Kind::none: return "none";
      case Kind::phi: return "phi";
      case Kind::rational: return format_rational(value);
    }
    return "none";
  }

  std::string respected(const Ratio& worst) const {
    switch (kind) {
      case Kind::none: return "n/a";
      case Kind::phi: return worst.compare_to_phi() != std::strong_ordering::greater ? "true" : "false";
      case Kind::rational: return worst.compare(value) != std::strong_ordering::greater ? "true" : "false";
    }
    return "n/a";
  }
};

Bound bound_for(const std::string& mechanism, const Solver& solver, std::size_t n,
                std::size_t ell) {
  const Rational two(2);
  if (mechanism == "moww") return {Bound::Kind::rational, std::max(two, solver.gamma())};
  if (mechanism == "moww-constrained") return {Bound::Kind::rational, two};
  if (mechanism == "golden") return {Bound::Kind::phi, 0};
  if (mechanism == "mr" && ell > n) {
    return {Bound::Kind::rational,
            solver.gamma() * Rational(static_cast<long>(ell)) / Rational(static_cast<long>(ell - n))};
  }
  return {};
}

struct Aggregate {
  Ratio worst = Ratio::of(1, 1);
  bool mean_infinite = false;
  Rational sum = 0;
  std::uint64_t count = 0;

  void add(const Ratio& r) {
    if (worst < r) worst = r;
    if (r.infinite) {
      mean_infinite = true;
    } else {
      sum += r.value;
    }
    ++count;
  }

  std::string mean() const {
    if (mean_infinite) return "+inf";
    if (count == 0) return "none";
    return format_decimal(sum / Rational(static_cast<long>(count)), 6);
  }
};

void scan_trial(const std::string& mechanism, const ValuationOracle& v, const CostGrid& grid,
                const TableFlags& flags, std::size_t ell, const Solver& solver, unsigned jobs,
                Aggregate& agg) {
  const std::size_t n = v.n();
  if (mechanism == "mr") {
    std::vector<OutcomeTable> tables;
    for (const TicketSpec& spec : make_ticket_family(n, grid, ell)) {
      tables.push_back(OutcomeTable::build(make_randomized_mr(v, grid, solver, spec), jobs));
    }
    for (std::uint64_t idx = 0; idx < tables.front().size(); ++idx) {
      std::vector<Outcome> outcomes;
      for (const OutcomeTable& t : tables) outcomes.push_back(t.at(idx));
      agg.add(mixture_ratio(outcomes, make_instance(v, grid, tables.front().profile(idx))));
    }
    return;
  }
  MechanismConfig config;
  config.name = mechanism;
  config.solver = solver;
  config.seed = flags.seed;
  const OutcomeTable table = OutcomeTable::build(build_mechanism(config, v, grid), jobs);
  const Instance base = make_instance(v, grid, CostProfile(n));
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    agg.add(approx_ratio(table.at(idx), base.with_costs(table.profile(idx))));
  }
}

int cmd_table(const TableFlags& flags, std::ostream& out) {
  const std::vector<std::string> mechanisms = split_list(flags.mechanisms);
  if (mechanisms.empty()) throw ParseError("--mechanisms is empty");
  for (const std::string& m : mechanisms) {
    if (std::find(kMechanisms.begin(), kMechanisms.end(), m) == kMechanisms.end()) {
      throw ParseError("unknown mechanism \"" + m + "\"");
    }
  }
  const ValuationClass cls = class_flag(flags.valuation_class);
  if (flags.n < 1 || flags.n > kMaxTableAgents) throw ParseError("--n must lie in 1..12");
  if (flags.k < 1) throw ParseError("--k must be >= 1");
  if (flags.trials < 1) throw ParseError("--trials must be >= 1");
  const Solver solver(parse_solver_method(flags.solver));
  const unsigned jobs = flags.jobs == 0 ? default_jobs() : flags.jobs;
  const CostGrid grid(flags.k);
  require_scan_guard(grid, flags.n);
  const bool wants_mr = std::find(mechanisms.begin(), mechanisms.end(), "mr") != mechanisms.end();
  const std::size_t ell = flags.ell != 0 ? flags.ell : wants_mr ? max_ell(flags.n, grid) : 0;
  if (wants_mr && ell == 0) {
    throw ParseError("mr needs n >= 2 and room for at least one ticket spec");
  }

  std::ofstream file;
  if (!flags.out_path.empty()) {
    file.open(flags.out_path);
    if (!file) throw IoError("cannot write " + flags.out_path);
  }

  std::ostringstream csv;
  csv << "mechanism,class,n,K,trials,worst_ratio,mean_ratio,bound,bound_respected\n";
  for (const std::string& mechanism : mechanisms) {
    std::mt19937_64 rng(flags.seed);
    Aggregate agg;
    for (std::size_t t = 0; t < flags.trials; ++t) {
      const ValuationOracle v = random_valuation(cls, flags.n, rng);
      scan_trial(mechanism, v, grid, flags, ell, solver, jobs, agg);
    }
    const Bound bound = bound_for(mechanism, solver, flags.n, ell);
    csv << mechanism << ',' << to_string(cls) << ',' << flags.n << ',' << flags.k << ','
        << flags.trials << ',' << agg.worst.str() << ',' << agg.mean() << ',' << bound.str()
        << ',' << bound.respected(agg.worst) << '\n';
  }

  if (flags.out_path.empty()) {
    out << csv.str();
  } else {
    file << csv.str();
    file.flush();
    if (!file) throw IoError("error writing " + flags.out_path);
  }
  return kExitOk;
}

// gap

int cmd_gap(const std::string& path, std::ostream& out) {
  const InstanceFile file = load_instance_file(path);
  const ForcingGap gap = agent_forcing_gap(file.instance.valuation, file.family());
  out << "delta " << (gap.unbounded ? std::string("+inf") : format_rational(gap.delta)) << "\n";
  if (gap.set && gap.agent) {
    out << "set {" << format_agent_set(*gap.set) << "}\n";
    out << "agent " << *gap.agent + 1 << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Budget-feasible NOM mechanisms: run, verify, tabulate, forcing gap"};
  app.name("budgetmech");
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run a mechanism on an instance file");
  run->add_option("instance", run_flags.path, "instance JSON file")->required();
  add_mechanism_flags(run, run_flags.common);
  run->add_option("--format", run_flags.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  VerifyFlags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "exhaustively check properties on the grid");
  CLI::Option* path_opt = verify->add_option("instance", verify_flags.path, "instance JSON file");
  CLI::Option* random_opt =
      verify->add_option("--random", verify_flags.random, "n k count seed")->expected(4);
  path_opt->excludes(random_opt);
  verify->add_option("--valuation-class", verify_flags.valuation_class,
                     "class of random valuations");
  add_mechanism_flags(verify, verify_flags.common);
  verify->add_option("--properties", verify_flags.properties,
                     "comma list of ir,np,bf,bnom,wnom,gt,ws,rgt,crosscheck");
  verify->add_option("--mutate", verify_flags.mutate, "apply a mutation to the mechanism");
  verify->add_option("--jobs", verify_flags.jobs, "worker threads (default BUDGETMECH_JOBS or 1)");

  TableFlags table_flags;
  CLI::App* table = app.add_subcommand("table", "worst and mean ratios over random instances");
  table->add_option("--mechanisms", table_flags.mechanisms, "comma list of mechanisms");
  table->add_option("--valuation-class", table_flags.valuation_class, "valuation class");
  table->add_option("--trials", table_flags.trials, "random valuations per mechanism");
  table->add_option("--n", table_flags.n, "number of agents");
  table->add_option("--k", table_flags.k, "grid resolution K");
  table->add_option("--seed", table_flags.seed, "random seed");
  table->add_option("--out", table_flags.out_path, "CSV output path (default stdout)");
  table->add_option("--solver", table_flags.solver, "exact, dp or greedy")
      ->check(CLI::IsMember({"exact", "dp", "greedy"}));
  table->add_option("--ell", table_flags.ell, "ticket specs for mr (default: largest that fits)");
  table->add_option("--jobs", table_flags.jobs, "worker threads (default BUDGETMECH_JOBS or 1)");

  std::string gap_path;
  CLI::App* gap = app.add_subcommand("gap", "agent-forcing gap of a feasibility family");
  gap->add_option("instance", gap_path, "instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    if (*run) return cmd_run(run_flags, out);
    if (*verify) {
      if (verify_flags.path.empty() && verify_flags.random.empty()) {
        throw ParseError("verify needs an instance file or --random n k count seed");
      }
      return cmd_verify(verify_flags, out);
    }
    if (*table) return cmd_table(table_flags, out);
    if (*gap) return cmd_gap(gap_path, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IncompatibleValuation& e) {
    err << "incompatible: " << e.what() << "\n";
    return kExitIncompatible;
  } catch (const GuardExceeded& e) {
    err << "guard " << e.guard() << " exceeded: " << e.what() << "\n";
    return kExitGuard;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}

}  // namespace budgetmech::cli
