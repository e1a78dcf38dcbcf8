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

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "budgetmech/domain.hpp"
#include "budgetmech/valuation.hpp"

namespace budgetmech {

/// A procurement instance: agents, valuation, budget (K ticks) and declared costs.
struct Instance {
  ValuationOracle valuation;
  CostGrid grid;
  CostProfile costs;

  std::size_t n() const { return costs.size(); }
  Money budget() const { return grid.budget(); }

  /// Same valuation and grid with a different cost profile (validated).
  Instance with_costs(CostProfile other) const;
};

/// Validates n >= 1, matching sizes and every cost on the grid.
Instance make_instance(ValuationOracle valuation, CostGrid grid, CostProfile costs);

}  // namespace budgetmech
