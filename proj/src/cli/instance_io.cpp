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
#include <map>
#include <sstream>

#include <json.hpp>

#include "budgetmech/cli.hpp"

namespace budgetmech::cli {
namespace {

using nlohmann::json;

Rational rational_field(const json& value, const std::string& where) {
  if (value.is_number_integer()) {
    return Rational(mpz_class(value.dump()));
  }
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a \"p/q\" string or an integer");
}

std::int64_t integer_field(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + ": expected an integer");
  return value.get<std::int64_t>();
}

const json& member(const json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

AgentSet subset_field(const std::string& text, std::size_t n, const std::string& where) {
  try {
    return parse_agent_set(text, n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

ValuationOracle parse_valuation(const json& node, std::size_t n) {
  if (!node.is_object()) throw ParseError("valuation: expected an object");
  const json& kind = member(node, "kind");
  if (kind == "additive") {
    const json& values = member(node, "values");
    if (!values.is_array()) throw ParseError("valuation.values: expected an array");
    if (values.size() != n) {
      throw ParseError("valuation.values: expected " + std::to_string(n) + " entries, got " +
                       std::to_string(values.size()));
    }
    std::vector<Rational> parsed;
    for (std::size_t i = 0; i < values.size(); ++i) {
      parsed.push_back(rational_field(values[i], "valuation.values[" + std::to_string(i) + "]"));
    }
    return make_additive(std::move(parsed));
  }
  if (kind == "table") {
    const json& entries = member(node, "entries");
    if (!entries.is_object()) throw ParseError("valuation.entries: expected an object");
    std::map<AgentSet, Rational> table;
    for (const auto& [key, value] : entries.items()) {
      const AgentSet s = subset_field(key, n, "valuation.entries key \"" + key + "\"");
      if (format_agent_set(s) != key) {
        throw ParseError("valuation.entries key \"" + key + "\" is not in canonical form");
      }
      table[s] = rational_field(value, "valuation.entries[\"" + key + "\"]");
    }
    return make_table(n, table);
  }
  throw ParseError("valuation.kind must be \"additive\" or \"table\"");
}

}  // namespace

InstanceFile parse_instance_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  try {
    const std::int64_t n = integer_field(member(doc, "n"), "n");
    if (n < 1 || n > static_cast<std::int64_t>(kMaxAgents)) {
      throw ParseError("n must lie in 1.." + std::to_string(kMaxAgents));
    }
    const auto agents = static_cast<std::size_t>(n);
    const std::int64_t k = integer_field(member(doc, "budget_ticks"), "budget_ticks");
    if (k < 1) throw ParseError("budget_ticks must be >= 1");
    const CostGrid grid(k);
    ValuationOracle valuation = parse_valuation(member(doc, "valuation"), agents);

    const json& costs = member(doc, "costs_ticks");
    if (!costs.is_array() || costs.size() != agents) {
      throw ParseError("costs_ticks: expected an array of " + std::to_string(n) + " integers");
    }
    CostProfile profile;
    for (std::size_t i = 0; i < costs.size(); ++i) {
      const std::int64_t c = integer_field(costs[i], "costs_ticks[" + std::to_string(i) + "]");
      if (c < 0 || c > k) {
        throw ParseError("costs_ticks[" + std::to_string(i) + "] must lie in 0..budget_ticks");
      }
      profile.emplace_back(c);
    }

    InstanceFile file{make_instance(std::move(valuation), grid, std::move(profile)), std::nullopt};
    if (const auto it = doc.find("feasibility"); it != doc.end()) {
      if (!it->is_array()) throw ParseError("feasibility: expected an array of subsets");
      std::vector<AgentSet> sets;
      for (const json& entry : *it) {
        if (!entry.is_string()) throw ParseError("feasibility: subsets are strings");
        sets.push_back(subset_field(entry.get<std::string>(), agents, "feasibility"));
      }
      file.feasibility = FeasibilityFamily::of(agents, std::move(sets));
    }
    return file;
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string render_instance_json(const InstanceFile& file) {
  const Instance& inst = file.instance;
  const std::size_t n = inst.n();
  json doc;
  doc["n"] = n;
  doc["budget_ticks"] = inst.grid.resolution();
  json valuation;
  if (inst.valuation.kind() == ValuationOracle::Kind::additive) {
    valuation["kind"] = "additive";
    json values = json::array();
    for (const Rational& v : inst.valuation.additive_values()) values.push_back(format_rational(v));
    valuation["values"] = values;
  } else {
    valuation["kind"] = "table";
    json entries = json::object();
    const std::uint32_t count = std::uint32_t{1} << n;
    for (std::uint32_t bits = 0; bits < count; ++bits) {
      entries[format_agent_set(AgentSet(bits))] = format_rational(inst.valuation.value(AgentSet(bits)));
    }
    valuation["entries"] = entries;
  }
  doc["valuation"] = valuation;
  json costs = json::array();
  for (Money c : inst.costs) costs.push_back(c.ticks());
  doc["costs_ticks"] = costs;
  if (file.feasibility && !file.feasibility->is_all()) {
    json sets = json::array();
    for (AgentSet s : file.feasibility->sets()) sets.push_back(format_agent_set(s));
    doc["feasibility"] = sets;
  }
  return doc.dump(2) + "\n";
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return parse_instance_json(buffer.str());
}

bool same_instance(const InstanceFile& a, const InstanceFile& b) {
  return a.instance.valuation == b.instance.valuation && a.instance.grid == b.instance.grid &&
         a.instance.costs == b.instance.costs && a.family() == b.family();
}

}  // namespace budgetmech::cli
