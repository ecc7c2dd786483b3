// Copyright 2026 The Dronenet Authors
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

#ifndef DRONENET_ENUMERATION_HPP
#define DRONENET_ENUMERATION_HPP

#include <cstdint>

#include "dronenet/design.hpp"
#include "dronenet/instance.hpp"

namespace dronenet {

struct EnumerationBudget {
  std::int64_t max_designs = 50'000'000;
};

struct EnumerationResult {
  Design best;
  double objective = 0.0;
  std::int64_t evaluated = 0;
  std::int64_t pruned = 0;
};

// Exhaustive search over every capacity vector satisfying the budget rows
// and every in-catchment assignment, skipping steady-state-violating
// configurations with the same load cap the linearized model uses. Exact
// argmin of the average response, ties broken to the lexicographically
// smallest (drones, assignment) encoding. Intended for desk-scale instances.
// Throws BudgetExceeded past the budget and NoFeasibleDesign when nothing
// qualifies.
EnumerationResult enumerate_optimum(const Instance& inst, EnumerationBudget budget = {});

}  // namespace dronenet

#endif  // DRONENET_ENUMERATION_HPP
