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

#include "dronenet/design.hpp"

#include <algorithm>

#include "dronenet/errors.hpp"
#include "dronenet/queueing.hpp"

namespace dronenet {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnassignedDemand: return "UnassignedDemand";
    case ViolationKind::AssignmentOutOfRange: return "AssignmentOutOfRange";
    case ViolationKind::AssignmentToClosedBase: return "AssignmentToClosedBase";
    case ViolationKind::TooManyOpenBases: return "TooManyOpenBases";
    case ViolationKind::DroneBoundsViolated: return "DroneBoundsViolated";
    case ViolationKind::FleetNotFullyDeployed: return "FleetNotFullyDeployed";
    case ViolationKind::GammaInconsistent: return "GammaInconsistent";
    case ViolationKind::SteadyState: return "SteadyState";
  }
  return "Unknown";
}

Design Design::from_counts(const Instance& inst, std::vector<int> drones,
                           std::vector<int> assigned_base) {
  const int nj = inst.num_bases();
  const int m_max = inst.params().M;
  Design d;
  d.drones = std::move(drones);
  d.assigned_base = std::move(assigned_base);
  d.open.assign(nj, 0);
  d.gamma.assign(static_cast<std::size_t>(nj) * m_max, 0);
  for (int j = 0; j < nj; ++j) {
    if (d.drones[j] > 0) {
      d.open[j] = 1;
      if (d.drones[j] <= m_max) d.gamma[static_cast<std::size_t>(j) * m_max + d.drones[j] - 1] = 1;
    }
  }
  return d;
}

std::vector<Violation> check_feasible(const Instance& inst, const Design& design) {
  std::vector<Violation> out;
  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  const int m_max = inst.params().M;

  auto add = [&out](ViolationKind kind, int demand, int base, std::string detail) {
    out.push_back(Violation{kind, demand, base, std::move(detail)});
  };

  // Assignment structure: every demand to exactly one open base in range.
  for (int i = 0; i < ni; ++i) {
    const int j = design.assigned_base[i];
    if (j < 0 || j >= nj) {
      add(ViolationKind::UnassignedDemand, i, j, "no base assigned");
      continue;
    }
    if (!inst.covers(i, j)) {
      add(ViolationKind::AssignmentOutOfRange, i, j, "assigned base outside catchment");
    }
    if (!design.open[j]) {
      add(ViolationKind::AssignmentToClosedBase, i, j, "assigned base is closed");
    }
  }

  int open_count = 0;
  int fleet = 0;
  for (int j = 0; j < nj; ++j) {
    open_count += design.open[j] ? 1 : 0;
    fleet += design.drones[j];
    const int lo = design.open[j] ? 1 : 0;
    const int hi = design.open[j] ? m_max : 0;
    if (design.drones[j] < lo || design.drones[j] > hi) {
      add(ViolationKind::DroneBoundsViolated, -1, j,
          "drone count " + std::to_string(design.drones[j]) + " outside [" +
              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    // gamma must be the one-hot expansion of the drone count.
    int weighted = 0;
    int ones = 0;
    for (int m = 1; m <= m_max; ++m) {
      const int g = design.gamma[static_cast<std::size_t>(j) * m_max + m - 1];
      weighted += m * g;
      ones += g;
    }
    if (ones > 1 || weighted != design.drones[j]) {
      add(ViolationKind::GammaInconsistent, -1, j, "gamma does not encode drone count");
    }
  }
  if (open_count > inst.params().q) {
    add(ViolationKind::TooManyOpenBases, -1, -1,
        std::to_string(open_count) + " open > q = " + std::to_string(inst.params().q));
  }
  if (fleet != inst.params().p) {
    add(ViolationKind::FleetNotFullyDeployed, -1, -1,
        "deployed " + std::to_string(fleet) + " of p = " + std::to_string(inst.params().p));
  }

  // Steady state per open base: offered load within the capped capacity.
  const ServiceMoments moments = service_moments(inst);
  for (int j = 0; j < nj; ++j) {
    if (!design.open[j]) continue;
    double load = 0.0;
    for (int i = 0; i < ni; ++i) {
      if (design.assigned_base[i] == j) {
        load += inst.demands()[i].lambda * moments.mean_at(i, j);
      }
    }
    if (load > inst.load_cap(design.drones[j])) {
      add(ViolationKind::SteadyState, -1, j,
          "offered load " + std::to_string(load) + " exceeds cap " +
              std::to_string(inst.load_cap(design.drones[j])));
    }
  }
  return out;
}

}  // namespace dronenet
