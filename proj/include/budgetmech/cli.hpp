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

// Command-line front end: instance files, mechanism construction by name,
// run reports and the `budgetmech` subcommands.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "budgetmech/instance.hpp"
#include "budgetmech/mechanisms.hpp"
#include "budgetmech/packing.hpp"
#include "budgetmech/verify.hpp"

namespace budgetmech::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitParse = 2,
  kExitIncompatible = 3,
  kExitGuard = 4,
  kExitIo = 5,
};

/// Malformed or invalid input file or flag value.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceFile {
  Instance instance;
  std::optional<FeasibilityFamily> feasibility;

  FeasibilityFamily family() const { return feasibility.value_or(FeasibilityFamily::all()); }
};

/// Parses the JSON instance format. Throws ParseError.
InstanceFile parse_instance_json(std::string_view text);
/// Renders an instance in the same format; parse_instance_json inverts it.
std::string render_instance_json(const InstanceFile& file);
/// Reads and parses a file. Throws IoError or ParseError.
InstanceFile load_instance_file(const std::string& path);

bool same_instance(const InstanceFile& a, const InstanceFile& b);

struct MechanismConfig {
  std::string name = "ww";
  Solver solver;
  std::uint64_t seed = 1;
  std::optional<std::size_t> ell;
  std::size_t spec_index = 0;
  FeasibilityFamily family = FeasibilityFamily::all();
};

/// Builds one of ww, moww, moww-constrained, golden, mr. Throws ParseError on
/// an unknown name, IncompatibleValuation on a class mismatch.
Mechanism build_mechanism(const MechanismConfig& config, const ValuationOracle& valuation,
                          const CostGrid& grid);

struct RunReport {
  std::string mechanism;
  Outcome outcome;
  Rational value;
  Rational optimum;
  Ratio ratio;
};

RunReport make_run_report(const Mechanism& mechanism, const InstanceFile& file);
std::string render_run_json(const RunReport& report);
/// Header row plus one data row.
std::string render_run_csv(const RunReport& report);

/// JSON rendering of a property report, agents 1-based.
std::string render_property_json(const PropertyReport& report);

/// Worker count from BUDGETMECH_JOBS, or 1. Throws ParseError on a bad value.
unsigned default_jobs();

/// Entry point of the `budgetmech` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace budgetmech::cli
