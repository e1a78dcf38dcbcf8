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

// Seeded random instances for property tests and experiments.

#include <cstddef>
#include <random>

#include "budgetmech/domain.hpp"
#include "budgetmech/valuation.hpp"

namespace budgetmech {

/// Values p/q with p in [0, 10q] and q in {1, 2, 3, 4}.
ValuationOracle random_additive(std::size_t n, std::mt19937_64& rng);

/// Pointwise maximum of random additive clauses and terms w * ceil(|S n A| / 2);
/// monotone, normalized and subadditive.
ValuationOracle random_subadditive_table(std::size_t n, std::mt19937_64& rng);

/// Weighted coverage; monotone, normalized and submodular.
ValuationOracle random_submodular_table(std::size_t n, std::mt19937_64& rng);

CostProfile random_profile(const CostGrid& grid, std::size_t n, std::mt19937_64& rng);

}  // namespace budgetmech
