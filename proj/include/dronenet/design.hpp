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

#ifndef DRONENET_DESIGN_HPP
#define DRONENET_DESIGN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dronenet/instance.hpp"

namespace dronenet {

// A candidate network configuration: which bases are open, how many drones
// each holds, and which base serves each demand. gamma is the capacity-level
// indicator array (|J| x M, row-major): gamma[j*M + m-1] == 1 iff drones[j] == m.
struct Design {
  std::vector<std::uint8_t> open;      // x_j
  std::vector<int> drones;             // K_j
  std::vector<int> assigned_base;      // y(i), base index per demand
  std::vector<std::uint8_t> gamma;     // |J| x M

  // Builds gamma and open from drone counts; y is taken as given.
  static Design from_counts(const Instance& inst, std::vector<int> drones,
                            std::vector<int> assigned_base);

  bool operator==(const Design& other) const = default;
};

enum class ViolationKind {
  UnassignedDemand,
  AssignmentOutOfRange,
  AssignmentToClosedBase,
  TooManyOpenBases,
  DroneBoundsViolated,
  FleetNotFullyDeployed,
  GammaInconsistent,
  SteadyState,
};

struct Violation {
  ViolationKind kind;
  int demand = -1;
  int base = -1;
  std::string detail;
};

const char* to_string(ViolationKind kind);

// Structural constraint check plus the per-base steady-state test
// (offered load <= load_cap(K_j)). Violations are returned as data;
// an empty vector means the design is feasible.
std::vector<Violation> check_feasible(const Instance& inst, const Design& design);

}  // namespace dronenet

#endif  // DRONENET_DESIGN_HPP
