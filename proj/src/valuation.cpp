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

#include "budgetmech/valuation.hpp"

#include <algorithm>
#include <numeric>

#include "budgetmech/errors.hpp"

namespace budgetmech {
namespace {

std::string describe(AgentSet s) { return "{" + format_agent_set(s) + "}"; }

void validate_table(std::size_t n, const std::vector<Rational>& values) {
  if (sgn(values[0]) != 0) {
    throw std::invalid_argument("table is not normalized: V({}) = " + format_rational(values[0]));
  }
  const std::uint32_t count = std::uint32_t{1} << n;
  // Report the largest single-step decrease, first in scan order on ties.
  std::optional<std::pair<AgentSet, AgentSet>> worst;
  Rational worst_drop = 0;
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    const AgentSet s(bits);
    if (sgn(values[bits]) < 0) {
      throw std::invalid_argument("negative value V(" + describe(s) + ")");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (s.contains(j)) continue;
      const AgentSet t = s.with(j);
      const Rational drop = values[bits] - values[t.bits()];
      if (sgn(drop) > 0 && (!worst || drop > worst_drop)) {
        worst = std::make_pair(s, t);
        worst_drop = drop;
      }
    }
  }
  if (worst) {
    const auto [s, t] = *worst;
    throw std::invalid_argument("table is not monotone: V(" + describe(s) + ") = " +
                                format_rational(values[s.bits()]) + " > V(" + describe(t) +
                                ") = " + format_rational(values[t.bits()]));
  }
}

}  // namespace

ValuationOracle::ValuationOracle(Kind kind, std::size_t n,
                                 std::shared_ptr<const std::vector<Rational>> data)
    : kind_(kind), n_(n), data_(std::move(data)) {}

Rational ValuationOracle::value(AgentSet s) const {
  if (!s.subset_of(AgentSet::all(n_))) throw std::out_of_range("set contains unknown agents");
  if (kind_ == Kind::table) return (*data_)[s.bits()];
  Rational total = 0;
  for (std::uint32_t b = s.bits(); b != 0; b &= b - 1) {
    total += (*data_)[static_cast<std::size_t>(std::countr_zero(b))];
  }
  return total;
}

const std::vector<Rational>& ValuationOracle::additive_values() const {
  if (kind_ != Kind::additive) throw IncompatibleValuation("valuation is not additive");
  return *data_;
}

ValuationOracle ValuationOracle::permuted(std::span<const std::size_t> order) const {
  if (order.size() != n_) throw std::invalid_argument("permutation has wrong length");
  std::vector<bool> seen(n_, false);
  for (std::size_t a : order) {
    if (a >= n_ || seen[a]) throw std::invalid_argument("not a permutation");
    seen[a] = true;
  }
  if (kind_ == Kind::additive) {
    std::vector<Rational> values(n_);
    for (std::size_t k = 0; k < n_; ++k) values[k] = (*data_)[order[k]];
    return ValuationOracle(kind_, n_, std::make_shared<const std::vector<Rational>>(std::move(values)));
  }
  const std::uint32_t count = std::uint32_t{1} << n_;
  std::vector<Rational> values(count);
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    std::uint32_t old = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      if ((bits >> k) & 1u) old |= std::uint32_t{1} << order[k];
    }
    values[bits] = (*data_)[old];
  }
  return ValuationOracle(kind_, n_, std::make_shared<const std::vector<Rational>>(std::move(values)));
}

std::string ValuationOracle::fingerprint() const {
  std::string out = kind_ == Kind::additive ? "add" : "tab";
  out += std::to_string(n_);
  for (const Rational& r : *data_) {
    out += ';';
    out += format_rational(r);
  }
  return out;
}

bool ValuationOracle::operator==(const ValuationOracle& other) const {
  return kind_ == other.kind_ && n_ == other.n_ &&
         (data_ == other.data_ || *data_ == *other.data_);
}

ValuationOracle make_additive(std::vector<Rational> values) {
  if (values.empty()) throw std::invalid_argument("additive valuation needs at least one agent");
  if (values.size() > kMaxAgents) throw std::invalid_argument("too many agents");
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i].canonicalize();
    if (sgn(values[i]) < 0) {
      throw std::invalid_argument("negative value for agent " + std::to_string(i + 1));
    }
  }
  const std::size_t n = values.size();
  return ValuationOracle(ValuationOracle::Kind::additive, n,
                         std::make_shared<const std::vector<Rational>>(std::move(values)));
}

ValuationOracle make_table(std::size_t n, const std::map<AgentSet, Rational>& entries) {
  if (n < 1 || n > kMaxTableAgents) {
    throw std::invalid_argument("table valuations support 1.." + std::to_string(kMaxTableAgents) +
                                " agents");
  }
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<Rational> values(count);
  for (const auto& [set, value] : entries) {
    if (!set.subset_of(AgentSet::all(n))) {
      throw std::invalid_argument("entry " + describe(set) + " names unknown agents");
    }
  }
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    const auto it = entries.find(AgentSet(bits));
    if (it == entries.end()) {
      throw std::invalid_argument("table is missing subset " + describe(AgentSet(bits)));
    }
    values[bits] = it->second;
  }
  return make_table(n, std::move(values));
}

ValuationOracle make_table(std::size_t n, std::vector<Rational> values) {
  if (n < 1 || n > kMaxTableAgents) {
    throw std::invalid_argument("table valuations support 1.." + std::to_string(kMaxTableAgents) +
                                " agents");
  }
  if (values.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("table must have exactly 2^n entries");
  }
  for (Rational& v : values) v.canonicalize();
  validate_table(n, values);
  return ValuationOracle(ValuationOracle::Kind::table, n,
                         std::make_shared<const std::vector<Rational>>(std::move(values)));
}

std::string_view to_string(ValuationClass c) {
  switch (c) {
    case ValuationClass::normalized: return "normalized";
    case ValuationClass::monotone: return "monotone";
    case ValuationClass::subadditive: return "subadditive";
    case ValuationClass::submodular: return "submodular";
    case ValuationClass::additive: return "additive";
  }
  return "unknown";
}

ValuationClass parse_valuation_class(std::string_view name) {
  for (ValuationClass c : {ValuationClass::normalized, ValuationClass::monotone,
                           ValuationClass::subadditive, ValuationClass::submodular,
                           ValuationClass::additive}) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown valuation class \"" + std::string(name) + "\"");
}

ClassCheck check_class(const ValuationOracle& oracle, ValuationClass cls) {
  const std::size_t n = oracle.n();
  if (n > kMaxTableAgents) {
    throw GuardExceeded("class_check", "exhaustive class check refuses n = " + std::to_string(n) +
                                           " > " + std::to_string(kMaxTableAgents));
  }
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<Rational> v(count);
  for (std::uint32_t bits = 0; bits < count; ++bits) v[bits] = oracle.value(AgentSet(bits));

  ClassCheck result;
  const auto fail = [&](std::uint32_t s, std::uint32_t t) {
    result.holds = false;
    result.witness = std::make_pair(AgentSet(s), AgentSet(t));
    return result;
  };

  if (cls == ValuationClass::normalized) {
    if (sgn(v[0]) != 0) return fail(0, 0);
    return result;
  }
  for (std::uint32_t s = 0; s < count; ++s) {
    for (std::uint32_t t = 0; t < count; ++t) {
      switch (cls) {
        case ValuationClass::monotone:
          if ((s & ~t) == 0 && v[s] > v[t]) return fail(s, t);
          break;
        case ValuationClass::additive:
          if ((s & t) == 0 && v[s | t] != v[s] + v[t]) return fail(s, t);
          break;
        case ValuationClass::subadditive:
          if (v[s | t] > v[s] + v[t]) return fail(s, t);
          break;
        case ValuationClass::submodular:
          if (v[s | t] + v[s & t] > v[s] + v[t]) return fail(s, t);
          break;
        case ValuationClass::normalized:
          break;
      }
    }
  }
  return result;
}

std::vector<std::size_t> singleton_order(const ValuationOracle& oracle) {
  std::vector<std::size_t> order(oracle.n());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Rational> single(oracle.n());
  for (std::size_t i = 0; i < oracle.n(); ++i) single[i] = oracle.singleton(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return single[a] > single[b]; });
  return order;
}

}  // namespace budgetmech
