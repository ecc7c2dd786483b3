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

#include "dronenet/enumeration.hpp"

#include <cmath>
#include <vector>

#include "dronenet/errors.hpp"
#include "dronenet/queueing.hpp"

namespace dronenet {

namespace {

struct SearchState {
  const Instance* inst;
  const ServiceMoments* moments;
  std::int64_t max_designs;
  std::int64_t evaluated = 0;
  std::int64_t pruned = 0;

  std::vector<int> drones;         // current capacity vector
  std::vector<double> cap;         // load cap per base under current drones
  std::vector<double> load;        // accumulated lambda * E[S]
  std::vector<double> eta;         // accumulated lambda
  std::vector<double> second_sum;  // accumulated lambda * E[S^2]
  std::vector<int> assigned;       // y under construction
  double travel_sum = 0.0;         // accumulated lambda * d/v

  bool has_best = false;
  double best_obj = 0.0;
  std::vector<int> best_drones;
  std::vector<int> best_assigned;
};

// Lexicographic (drones, assignment) order for exact ties.
bool lexicographically_smaller(const SearchState& s) {
  for (std::size_t j = 0; j < s.drones.size(); ++j) {
    if (s.drones[j] != s.best_drones[j]) return s.drones[j] < s.best_drones[j];
  }
  for (std::size_t i = 0; i < s.assigned.size(); ++i) {
    if (s.assigned[i] != s.best_assigned[i]) return s.assigned[i] < s.best_assigned[i];
  }
  return false;
}

void evaluate_leaf(SearchState& s) {
  if (++s.evaluated > s.max_designs) throw BudgetExceeded("enumeration budget exhausted");
  double delay_weighted = 0.0;
  for (int j = 0; j < s.inst->num_bases(); ++j) {
    if (s.drones[j] == 0 || s.eta[j] <= 0.0) continue;
    const double d = mgk_delay(s.eta[j], s.load[j] / s.eta[j], s.second_sum[j] / s.eta[j],
                               s.drones[j]);
    delay_weighted += s.eta[j] * d;
  }
  const double obj = (delay_weighted + s.travel_sum) / s.inst->total_lambda();
  const double tie_eps = 1e-12 * std::max(1.0, std::fabs(obj));
  if (!s.has_best || obj < s.best_obj - tie_eps) {
    s.has_best = true;
    s.best_obj = obj;
    s.best_drones = s.drones;
    s.best_assigned = s.assigned;
  } else if (obj <= s.best_obj + tie_eps && lexicographically_smaller(s)) {
    s.best_drones = s.drones;
    s.best_assigned = s.assigned;
  }
}

void assign_demand(SearchState& s, int i) {
  const int ni = s.inst->num_demands();
  if (i == ni) {
    evaluate_leaf(s);
    return;
  }
  const auto& demand = s.inst->demands()[i];
  for (int j : s.inst->bases_covering(i)) {
    if (s.drones[j] == 0) continue;
    const double w = demand.lambda * s.moments->mean_at(i, j);
    if (s.load[j] + w > s.cap[j] + 1e-15) {
      ++s.pruned;
      continue;
    }
    s.assigned[i] = j;
    s.load[j] += w;
    s.eta[j] += demand.lambda;
    s.second_sum[j] += demand.lambda * s.moments->second_at(i, j);
    s.travel_sum += demand.lambda * s.inst->distance(i, j) / s.inst->params().v;
    assign_demand(s, i + 1);
    s.travel_sum -= demand.lambda * s.inst->distance(i, j) / s.inst->params().v;
    s.second_sum[j] -= demand.lambda * s.moments->second_at(i, j);
    s.eta[j] -= demand.lambda;
    s.load[j] -= w;
    s.assigned[i] = -1;
  }
}

void choose_capacities(SearchState& s, int j, int drones_left, int opens_left) {
  const int nj = s.inst->num_bases();
  if (j == nj) {
    if (drones_left != 0) return;
    // Coverage precheck before walking the assignment tree.
    for (int i = 0; i < s.inst->num_demands(); ++i) {
      bool covered = false;
      for (int jj : s.inst->bases_covering(i)) {
        if (s.drones[jj] > 0) {
          covered = true;
          break;
        }
      }
      if (!covered) return;
    }
    assign_demand(s, 0);
    return;
  }
  const int m_max = s.inst->params().M;
  for (int k = 0; k <= m_max; ++k) {
    if (k > drones_left) break;
    if (k > 0 && opens_left == 0) break;
    s.drones[j] = k;
    s.cap[j] = k > 0 ? s.inst->load_cap(k) : 0.0;
    choose_capacities(s, j + 1, drones_left - k, opens_left - (k > 0 ? 1 : 0));
  }
  s.drones[j] = 0;
  s.cap[j] = 0.0;
}

}  // namespace

EnumerationResult enumerate_optimum(const Instance& inst, EnumerationBudget budget) {
  const ServiceMoments moments = service_moments(inst);
  SearchState s;
  s.inst = &inst;
  s.moments = &moments;
  s.max_designs = budget.max_designs;
  s.drones.assign(inst.num_bases(), 0);
  s.cap.assign(inst.num_bases(), 0.0);
  s.load.assign(inst.num_bases(), 0.0);
  s.eta.assign(inst.num_bases(), 0.0);
  s.second_sum.assign(inst.num_bases(), 0.0);
  s.assigned.assign(inst.num_demands(), -1);

  choose_capacities(s, 0, inst.params().p, inst.params().q);

  if (!s.has_best) throw NoFeasibleDesign("no design satisfies the structural constraints");

  EnumerationResult out;
  out.best = Design::from_counts(inst, s.best_drones, s.best_assigned);
  out.evaluated = s.evaluated;
  out.pruned = s.pruned;
  // The leaf evaluation and this call share one code path by construction;
  // report the canonical evaluator's number.
  out.objective = average_response(inst, moments, out.best).avg_resp;
  return out;
}

}  // namespace dronenet
