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

#include "dronenet/greedy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "dronenet/errors.hpp"
#include "dronenet/queueing.hpp"

namespace dronenet {

GreedyResult greedy_design(const Instance& inst) {
  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  const int q = inst.params().q;
  const int p = inst.params().p;
  const int m_max = inst.params().M;

  std::vector<int> order(nj);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&inst](int a, int b) {
    const auto ca = inst.demands_in_catchment(a).size();
    const auto cb = inst.demands_in_catchment(b).size();
    if (ca != cb) return ca > cb;
    return a < b;
  });

  std::vector<int> drones(nj, 0);
  const int opened = std::min(q, nj);
  for (int pos = 0; pos < opened; ++pos) drones[order[pos]] = 1;
  int surplus = p - opened;
  while (surplus > 0) {
    bool placed = false;
    for (int pos = 0; pos < opened && surplus > 0; ++pos) {
      const int j = order[pos];
      if (drones[j] < m_max) {
        ++drones[j];
        --surplus;
        placed = true;
      }
    }
    if (!placed) break;  // every open base saturated at M
  }

  GreedyResult out;
  std::vector<int> assigned(ni, -1);
  for (int i = 0; i < ni; ++i) {
    double best_d = std::numeric_limits<double>::infinity();
    int best_j = -1;
    for (int j : inst.bases_covering(i)) {
      if (drones[j] == 0) continue;
      const double d = inst.distance(i, j);
      if (d < best_d || (d == best_d && j < best_j)) {
        best_d = d;
        best_j = j;
      }
    }
    if (best_j < 0) {
      out.uncovered.push_back(i);
    } else {
      assigned[i] = best_j;
    }
  }

  out.design = Design::from_counts(inst, std::move(drones), std::move(assigned));
  out.objective = std::numeric_limits<double>::infinity();
  if (out.uncovered.empty()) {
    try {
      const ServiceMoments moments = service_moments(inst);
      out.objective = average_response(inst, moments, out.design).avg_resp;
      out.stable = true;
    } catch (const UnstableQueue&) {
      out.stable = false;
    }
  }
  return out;
}

}  // namespace dronenet
