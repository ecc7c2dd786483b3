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

#ifndef DRONENET_MILP_HPP
#define DRONENET_MILP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "dronenet/design.hpp"
#include "dronenet/instance.hpp"
#include "dronenet/lp.hpp"
#include "dronenet/queueing.hpp"

namespace dronenet {

enum class RowClass : std::uint8_t {
  Structural,      // assignment, coverage, budget, steady state, gamma linking
  UDef,            // delay-variable definition rows
  Fortet,          // z = y*y envelopes (lazy pool)
  McCormickMu,     // mu = y*U envelopes
  McCormickTau,    // tau = z*U envelopes (lazy pool)
  McCormickOmega,  // omega = gamma*mu envelopes
  Product,         // general-M multilinear product envelopes
  VI3,             // gamma activation cuts
  VI4,             // delay monotone-in-capacity cuts
  VI5,             // open-base optimality cuts
};

struct ModelRow {
  LpRow row;
  RowClass cls = RowClass::Structural;
};

struct ModelVar {
  double lower = 0.0;
  double upper = 1.0;
  bool integral = false;
  std::string name;
};

// Index space of the two-drone linearization. Demand-side variables are kept
// sparse over the catchment sets; pair variables range over
// D_j = {(l, t) : l, t in I_j, l < t}.
class VarSpace {
 public:
  int num_demands = 0;
  int num_bases = 0;
  int levels = 0;  // M

  int x(int j) const { return x_[j]; }
  // -1 when j is outside the demand's catchment.
  int y(int i, int j) const { return y_[static_cast<std::size_t>(i) * num_bases + j]; }
  int gamma(int j, int m) const { return gamma_[static_cast<std::size_t>(j) * levels + m - 1]; }
  int u(int j, int m) const { return u_[static_cast<std::size_t>(j) * levels + m - 1]; }
  int mu(int j, int pos_l, int m) const { return mu_start_[j] + pos_l * levels + m - 1; }
  int z(int j, int pair) const { return z_start_[j] + pair; }
  int tau(int j, int pair) const { return tau_start_[j] + pair; }
  int omega(int j, int pos_i, int m) const { return omega_start_[j] + pos_i * levels + m - 1; }

  const std::vector<std::pair<int, int>>& pairs(int j) const { return pairs_[j]; }

  std::vector<int> x_, y_, gamma_, u_;
  std::vector<int> mu_start_, z_start_, tau_start_, omega_start_;
  std::vector<std::vector<std::pair<int, int>>> pairs_;  // D_j, demand indices
};

struct LinearizedModel {
  enum class Kind { TwoDrone, GeneralM };

  Kind kind = Kind::TwoDrone;
  const Instance* instance = nullptr;
  ServiceMoments moments;
  VarSpace vars;  // populated for TwoDrone

  std::vector<ModelVar> var_info;
  std::vector<double> objective;  // dense, minimize
  std::vector<ModelRow> rows;

  std::vector<int> core_rows;     // the full constraint set of the MILP
  std::vector<int> lazy_pool;     // Fortet and tau-McCormick row ids
  std::vector<int> usercut_pool;  // VI3 then VI4 row ids
  std::vector<int> vi5_rows;      // appended to the lazy pool in cut mode

  std::vector<double> u_bound;  // per (j, m), bound of the scaled-delay variable

  // Recovery maps shared by both kinds.
  std::vector<int> x_index;      // |J|
  std::vector<int> y_index;      // |I| x |J|, -1 outside catchment
  std::vector<int> gamma_index;  // |J| x M

  std::vector<int> binaries() const;
  int y_at(int i, int j) const {
    return y_index[static_cast<std::size_t>(i) * instance->num_bases() + j];
  }
};

// Valid upper bounds for the per-base scaled-delay variables, one per
// (base, capacity level). The load-constrained numerator is bounded by a
// fractional knapsack over {lambda_l * E[S_lj^2]} with weights
// {lambda_l * E[S_lj]} and budget m * rho_cap; the denominator is bounded
// below by its value at the extreme admissible load. Never cuts a value
// attainable by a feasible assignment.
std::vector<double> compute_u_bounds(const Instance& inst, const ServiceMoments& moments,
                                     double rho_cap);

// Capacity-level expansion rows: steady state, open/count linking, fleet
// total and the at-most-one level row, emitted in deterministic order.
struct GammaVarRefs {
  const std::vector<int>* x_index;
  const std::vector<int>* y_index;      // |I| x |J|
  const std::vector<int>* gamma_index;  // |J| x M
};
std::vector<ModelRow> gamma_expand(const Instance& inst, const ServiceMoments& moments,
                                   const GammaVarRefs& refs);

// Exact MILP linearization for M = 2 drones per base.
LinearizedModel linearize_m2(const Instance& inst, const ServiceMoments& moments);

// Exact MILP linearization for any M >= 1 via multilinear product expansion.
// Emits a warning row-count estimate to the optional stream for M > 4.
LinearizedModel linearize_general(const Instance& inst, const ServiceMoments& moments, int levels,
                                  std::ostream* complexity_warning = nullptr);

// Recovers the design encoded by an integral, row-feasible point.
// Throws NonIntegral / RowInfeasible.
Design design_from_point(const LinearizedModel& model, const std::vector<double>& point);

// Plain-text LP export for cross-checking against external solvers.
void export_lp_text(const LinearizedModel& model, std::ostream& os);

}  // namespace dronenet

#endif  // DRONENET_MILP_HPP
