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

#ifndef DRONENET_GREEDY_HPP
#define DRONENET_GREEDY_HPP

#include <vector>

#include "dronenet/design.hpp"
#include "dronenet/instance.hpp"

namespace dronenet {

struct GreedyResult {
  Design design;
  // Demands with no open base in range; reported, never silently dropped.
  std::vector<int> uncovered;
  // The greedy rule has no stability safeguard; when false the evaluator
  // reports an infinite average response.
  bool stable = false;
  double objective = 0.0;  // +inf when unstable or uncovered nonempty
};

// Coverage-count greedy baseline: opens the q bases with the most demand
// points in catchment (ties to the lowest base id), seats one drone each,
// hands surplus drones out one at a time in descending catchment-count order
// up to M per base, then assigns every demand to the nearest open in-range
// base (ties to the lowest id).
GreedyResult greedy_design(const Instance& inst);

}  // namespace dronenet

#endif  // DRONENET_GREEDY_HPP
