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

#ifndef DRONENET_ERRORS_HPP
#define DRONENET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dronenet {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidCoordinate : Error {
  using Error::Error;
};

struct InvalidParam : Error {
  using Error::Error;
};

struct UncoverableDemand : Error {
  explicit UncoverableDemand(int demand_index)
      : Error("demand " + std::to_string(demand_index) +
              " has no candidate base within catchment radius"),
        demand(demand_index) {}
  int demand;
};

struct EmptyBase : Error {
  explicit EmptyBase(int base_index)
      : Error("base " + std::to_string(base_index) + " has no assigned demand"),
        base(base_index) {}
  int base;
};

struct UnstableQueue : Error {
  UnstableQueue(int base_index, double rho, int capacity)
      : Error("queue at base " + std::to_string(base_index) + " unstable: load " +
              std::to_string(rho) + " >= capacity " + std::to_string(capacity)),
        base(base_index) {}
  int base;
};

struct InvalidCapacity : Error {
  using Error::Error;
};

struct DegenerateBound : Error {
  using Error::Error;
};

struct NonIntegral : Error {
  using Error::Error;
};

struct RowInfeasible : Error {
  using Error::Error;
};

struct NoFractionalVar : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct NoFeasibleDesign : Error {
  using Error::Error;
};

struct OracleFailure : Error {
  using Error::Error;
};

struct LpUnbounded : Error {
  using Error::Error;
};

struct LpInfeasible : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace dronenet

#endif  // DRONENET_ERRORS_HPP
