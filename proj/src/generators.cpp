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


#include "budgetmech/generators.hpp"

#include <algorithm>
#include <vector>

namespace budgetmech {
namespace {

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

ValuationOracle random_additive(std::size_t n, std::mt19937_64& rng) {
  std::vector<Rational> values;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t den = uniform(rng, 1, 4);
    values.emplace_back(static_cast<long>(uniform(rng, 0, 10 * den)), static_cast<long>(den));
  }
  return make_additive(std::move(values));
}

ValuationOracle random_subadditive_table(std::size_t n, std::mt19937_64& rng) {
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<Rational> table(count, Rational(0));
  const auto raise = [&](const std::vector<Rational>& f) {
    for (std::uint32_t s = 0; s < count; ++s) table[s] = std::max(table[s], f[s]);
  };
  const std::int64_t clauses = uniform(rng, 1, 3);
  for (std::int64_t k = 0; k < clauses; ++k) {
    std::vector<std::int64_t> w(n);
    for (auto& x : w) x = uniform(rng, 0, 6);
    std::vector<Rational> f(count);
    for (std::uint32_t s = 0; s < count; ++s) {
      std::int64_t total = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if ((s >> i) & 1u) total += w[i];
      }
      f[s] = Rational(static_cast<long>(total));
    }
    raise(f);
  }
  const std::int64_t halves = uniform(rng, 1, 2);
  for (std::int64_t k = 0; k < halves; ++k) {
    const auto mask = static_cast<std::uint32_t>(uniform(rng, 1, count - 1));
    const std::int64_t weight = uniform(rng, 1, 8);
    std::vector<Rational> f(count);
    for (std::uint32_t s = 0; s < count; ++s) {
      const int hits = std::popcount(s & mask);
      f[s] = Rational(static_cast<long>(weight * ((hits + 1) / 2)));
    }
    raise(f);
  }
  return make_table(n, std::move(table));
}

ValuationOracle random_submodular_table(std::size_t n, std::mt19937_64& rng) {
  const std::size_t elements = 2 * n;
  std::vector<std::int64_t> weight(elements);
  for (auto& w : weight) w = uniform(rng, 1, 5);
  std::vector<std::uint64_t> covers(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < elements; ++e) {
      if (uniform(rng, 0, 2) == 0) covers[i] |= std::uint64_t{1} << e;
    }
  }
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<Rational> table(count);
  for (std::uint32_t s = 0; s < count; ++s) {
    std::uint64_t covered = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((s >> i) & 1u) covered |= covers[i];
    }
    std::int64_t total = 0;
    for (std::size_t e = 0; e < elements; ++e) {
      if ((covered >> e) & 1u) total += weight[e];
    }
    table[s] = Rational(static_cast<long>(total));
  }
  return make_table(n, std::move(table));
}

CostProfile random_profile(const CostGrid& grid, std::size_t n, std::mt19937_64& rng) {
  CostProfile c;
  for (std::size_t i = 0; i < n; ++i) c.emplace_back(uniform(rng, 0, grid.resolution()));
  return c;
}

}  // namespace budgetmech
