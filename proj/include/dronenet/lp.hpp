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

#ifndef DRONENET_LP_HPP
#define DRONENET_LP_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace dronenet {

enum class RowSense : char { LessEqual = 'L', GreaterEqual = 'G', Equal = 'E' };

struct LpRow {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient), sorted
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;  // structural variables only
};

// Revised bounded-variable simplex over a dense basis inverse.
//
// All variables carry finite bounds, so a genuinely unbounded LP signals a
// model bug upstream. Minimization throughout. The engine is incremental:
// rows may be appended between solves (the basis inverse is extended in
// O(m^2)) and variable bounds may be replaced per node; re-solves start from
// the previous basis with the dual simplex whenever that basis is still
// dual feasible.
//
// Pivoting is deterministic: Dantzig pricing with lowest-index tie breaks,
// falling back to Bland's rule after a run of degenerate iterations.
class IncrementalLp {
 public:
  IncrementalLp(std::vector<double> lower, std::vector<double> upper,
                std::vector<double> objective);

  // Appends a row (the engine stores an internally equilibrated copy).
  // Invalidates nothing: the current basis is extended with the new slack.
  int add_row(const LpRow& row);

  int num_rows() const { return static_cast<int>(row_rhs_.size()); }
  int num_vars() const { return num_structural_; }

  // Replaces variable bounds with the base bounds overridden by the given
  // fixings, in preparation for the next solve.
  void set_node_bounds(const std::vector<std::pair<int, double>>& fixings);

  LpSolution solve();

  void invalidate_basis() { basis_valid_ = false; }

  std::int64_t iterations() const { return iterations_; }

 private:
  enum Status : std::uint8_t { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

  // -- construction of internal state --------------------------------------
  void cold_start();
  void recompute_basic_values();
  bool refactorize();

  // -- linear algebra over the dense column-major basis inverse ------------
  void compute_duals(const std::vector<double>& cost_basic, std::vector<double>& y) const;
  void compute_column(int var, std::vector<double>& w) const;
  void compute_binv_row(int row, std::vector<double>& beta) const;
  void apply_pivot(int leaving_row, int entering_var, const std::vector<double>& w);

  double reduced_cost(int var, const std::vector<double>& y) const;
  double var_value(int var) const;
  double lower_of(int var) const;
  double upper_of(int var) const;
  bool is_fixed(int var) const { return upper_of(var) - lower_of(var) <= 0.0; }

  // -- simplex phases -------------------------------------------------------
  bool primal_feasible(double* total_violation) const;
  bool ensure_dual_feasible_statuses();
  LpStatus primal_simplex(bool phase_one);
  LpStatus dual_simplex();
  double objective_value() const;

  int num_structural_ = 0;
  std::vector<double> base_lower_, base_upper_;  // structural base bounds
  std::vector<double> lower_, upper_;            // current bounds (structural + slack)
  std::vector<double> cost_;                     // structural costs

  // Structural columns as (row, coefficient) pairs; slack columns implicit.
  std::vector<std::vector<std::pair<int, double>>> columns_;
  std::vector<double> row_rhs_;     // equilibrated
  std::vector<double> row_scale_;   // original row * scale = stored row

  std::vector<int> basic_var_;       // per row
  std::vector<int> row_of_var_;      // per variable, -1 when nonbasic
  std::vector<std::uint8_t> status_; // per variable (structural + slack)
  std::vector<double> basic_value_;  // per row
  std::vector<double> binv_;         // m*m, column-major
  bool basis_valid_ = false;

  std::int64_t iterations_ = 0;
  int degenerate_run_ = 0;
  bool bland_mode_ = false;
};

// Stateless bounded-variable simplex used as the solver's LP oracle: builds
// an engine, applies the extra bounds, and solves from a cold start.
LpSolution solve_lp(const std::vector<LpRow>& rows, std::vector<double> lower,
                    std::vector<double> upper, std::vector<double> objective,
                    const std::vector<std::pair<int, double>>& extra_fixings = {});

}  // namespace dronenet

#endif  // DRONENET_LP_HPP
