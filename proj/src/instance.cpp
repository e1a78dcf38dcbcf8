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


#include "budgetmech/instance.hpp"

#include <string>

namespace budgetmech {

Instance Instance::with_costs(CostProfile other) const {
  return make_instance(valuation, grid, std::move(other));
}

Instance make_instance(ValuationOracle valuation, CostGrid grid, CostProfile costs) {
  if (costs.empty()) throw std::invalid_argument("instance needs at least one agent");
  if (costs.size() != valuation.n()) {
    throw std::invalid_argument("cost profile has " + std::to_string(costs.size()) +
                                " entries but the valuation has " +
                                std::to_string(valuation.n()) + " agents");
  }
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!grid.admits(costs[i])) {
      throw std::invalid_argument("cost of agent " + std::to_string(i + 1) +
                                  " exceeds the budget");
    }
  }
  return Instance{std::move(valuation), grid, std::move(costs)};
}

}  // namespace budgetmech
