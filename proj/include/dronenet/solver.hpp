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

#ifndef DRONENET_SOLVER_HPP
#define DRONENET_SOLVER_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "dronenet/design.hpp"
#include "dronenet/milp.hpp"

namespace dronenet {

// REFO solves the full linearization directly; OA holds the Fortet and
// tau-McCormick families in a lazy pool reinstated only at violated integer
// candidates; OA_BC additionally seeds the lazy pool with the open-base
// optimality cuts and separates the activation/monotonicity valid
// inequalities at fractional nodes.
enum class SolveMode { REFO, OA, OA_BC };

const char* to_string(SolveMode mode);

struct SolveParams {
  double gap_tolerance = 1e-4;
  double time_limit_s = std::numeric_limits<double>::infinity();
  std::int64_t node_limit = -1;  // < 0: unlimited
  std::ostream* trace = nullptr;
  // Overrides for cut experiments; by default the mode decides.
  std::optional<bool> enable_usercuts;
  std::optional<bool> enable_vi5;
};

enum class SolveStatus { Optimal, Infeasible, TimeLimit, NodeLimit, OracleFailure };

const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::OracleFailure;
  bool has_incumbent = false;
  Design incumbent;
  double objective = std::numeric_limits<double>::infinity();
  double lower_bound = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  std::int64_t nodes = 0;
  std::int64_t lazy_reinstated = 0;
  std::int64_t user_cuts_applied = 0;
  std::int64_t lp_iterations = 0;
  double wall_time_s = 0.0;
};

SolveReport solve(const LinearizedModel& model, SolveMode mode, const SolveParams& params = {});

// Row ids of the pool violated by the point, ascending; absolute tolerance 1e-7.
std::vector<int> separate_lazy(const LinearizedModel& model, const std::vector<double>& point,
                               const std::vector<int>& pool);
std::vector<int> separate_usercuts(const LinearizedModel& model, const std::vector<double>& point,
                                   const std::vector<int>& pool);

// Most-fractional binary, ties to the lowest index. Throws NoFractionalVar.
int branch_variable(const LinearizedModel& model, const std::vector<double>& point);

}  // namespace dronenet

#endif  // DRONENET_SOLVER_HPP
