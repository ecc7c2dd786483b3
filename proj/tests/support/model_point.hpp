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

#ifndef DRONENET_TESTS_SUPPORT_MODEL_POINT_HPP
#define DRONENET_TESTS_SUPPORT_MODEL_POINT_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "dronenet/milp.hpp"

namespace dronenet::testing {

// Closed forms of the scaled delay variables: twice the mean queueing delay
// of the level, written directly from the single- and two-server cases of
// the M/G/K formula (independent of the model builder's algebra).
inline double closed_form_u1(double load, double numerator) {
  return numerator / (1.0 - load);
}
inline double closed_form_u2(double load, double numerator) {
  return numerator * load / (4.0 - load * load);
}

// Offered load and second-moment numerator of a base under a design.
inline void base_load_numerator(const Instance& inst, const ServiceMoments& moments,
                                const Design& design, int j, double* load, double* numerator) {
  *load = 0.0;
  *numerator = 0.0;
  for (int l : inst.demands_in_catchment(j)) {
    if (design.assigned_base[l] != j) continue;
    const double lam = inst.demands()[l].lambda;
    *load += lam * moments.mean_at(l, j);
    *numerator += lam * moments.second_at(l, j);
  }
}

// The unique completion of a feasible design into the two-drone model's
// variable space: binaries from the design, products exact, delay variables
// at their closed forms (the level-1 variable is released to its bound when
// two drones make the load exceed one).
inline std::vector<double> integer_point_from_design(const LinearizedModel& model,
                                                     const Design& design) {
  const Instance& inst = *model.instance;
  const ServiceMoments& moments = model.moments;
  const VarSpace& vs = model.vars;
  const int nj = inst.num_bases();
  std::vector<double> x(model.var_info.size(), 0.0);

  for (int j = 0; j < nj; ++j) x[vs.x(j)] = design.open[j] ? 1.0 : 0.0;
  for (int i = 0; i < inst.num_demands(); ++i) {
    const int j = design.assigned_base[i];
    if (j >= 0) x[vs.y(i, j)] = 1.0;
  }
  for (int j = 0; j < nj; ++j) {
    for (int m = 1; m <= 2; ++m) {
      x[vs.gamma(j, m)] = design.drones[j] == m ? 1.0 : 0.0;
    }
  }
  for (int j = 0; j < nj; ++j) {
    double load = 0.0, numerator = 0.0;
    base_load_numerator(inst, moments, design, j, &load, &numerator);
    const double ubound1 = model.u_bound[static_cast<std::size_t>(j) * 2];
    double u1;
    if (design.drones[j] == 0) {
      u1 = 0.0;
    } else if (design.drones[j] == 1) {
      u1 = closed_form_u1(load, numerator);
    } else {
      // Released by the level-2 indicator: the closed form may exceed the
      // single-drone bound (or have no nonnegative value at all) once the
      // pooled load passes the single-server cap.
      u1 = ubound1;
    }
    const double u2 = design.drones[j] == 0 ? 0.0 : closed_form_u2(load, numerator);
    x[vs.u(j, 1)] = u1;
    x[vs.u(j, 2)] = u2;

    const auto& cat = inst.demands_in_catchment(j);
    for (std::size_t pos = 0; pos < cat.size(); ++pos) {
      const double y = x[vs.y(cat[pos], j)];
      x[vs.mu(j, static_cast<int>(pos), 1)] = y * u1;
      x[vs.mu(j, static_cast<int>(pos), 2)] = y * u2;
      for (int m = 1; m <= 2; ++m) {
        x[vs.omega(j, static_cast<int>(pos), m)] =
            x[vs.gamma(j, m)] * x[vs.mu(j, static_cast<int>(pos), m)];
      }
    }
    for (std::size_t pr = 0; pr < vs.pairs(j).size(); ++pr) {
      const auto [l, t] = vs.pairs(j)[pr];
      const double z = x[vs.y(l, j)] * x[vs.y(t, j)];
      x[vs.z(j, static_cast<int>(pr))] = z;
      x[vs.tau(j, static_cast<int>(pr))] = z * u2;
    }
  }
  return x;
}

// Raw row check against the stated separation tolerance.
inline bool point_satisfies(const LinearizedModel& model, const std::vector<double>& point,
                            const std::vector<int>& row_ids, double tol = 1e-6) {
  for (int rid : row_ids) {
    const auto& row = model.rows[rid].row;
    double act = 0.0;
    double scale = 1.0;
    for (const auto& [var, coef] : row.terms) {
      act += coef * point[var];
      scale = std::max(scale, std::fabs(coef));
    }
    const double slack = act - row.rhs;
    const double t = tol * scale;
    if (row.sense == RowSense::LessEqual && slack > t) return false;
    if (row.sense == RowSense::GreaterEqual && slack < -t) return false;
    if (row.sense == RowSense::Equal && std::fabs(slack) > t) return false;
  }
  return true;
}

inline double point_objective(const LinearizedModel& model, const std::vector<double>& point) {
  double obj = 0.0;
  for (std::size_t v = 0; v < model.objective.size(); ++v) obj += model.objective[v] * point[v];
  return obj;
}

}  // namespace dronenet::testing

#endif  // DRONENET_TESTS_SUPPORT_MODEL_POINT_HPP
