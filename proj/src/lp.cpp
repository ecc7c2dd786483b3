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

#include "dronenet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dronenet/errors.hpp"

namespace dronenet {

namespace {
constexpr double kPrimalTol = 1e-7;
constexpr double kPivotTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kTieTol = 1e-12;
constexpr double kDegenerateStep = 1e-11;
constexpr int kBlandTrigger = 300;
constexpr std::int64_t kMaxIterationsPerSolve = 400000;
}  // namespace

IncrementalLp::IncrementalLp(std::vector<double> lower, std::vector<double> upper,
                             std::vector<double> objective)
    : num_structural_(static_cast<int>(objective.size())),
      base_lower_(lower),
      base_upper_(upper),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      cost_(std::move(objective)),
      columns_(num_structural_) {
  for (int j = 0; j < num_structural_; ++j) {
    if (!(lower_[j] <= upper_[j]) || !std::isfinite(lower_[j]) || !std::isfinite(upper_[j])) {
      throw InvalidParam("LP variable bounds must be finite with lower <= upper");
    }
  }
  status_.assign(num_structural_, kAtLower);
  row_of_var_.assign(num_structural_, -1);
}

int IncrementalLp::add_row(const LpRow& row) {
  const int r = num_rows();
  // Normalize >= rows to <= and equilibrate by the largest coefficient.
  const double sign = row.sense == RowSense::GreaterEqual ? -1.0 : 1.0;
  double maxabs = 0.0;
  for (const auto& [var, coef] : row.terms) maxabs = std::max(maxabs, std::fabs(coef));
  const double scale = maxabs > 0.0 ? sign / maxabs : sign;

  double min_activity = 0.0;  // of the stored (scaled) row over the base box
  for (const auto& [var, coef] : row.terms) {
    const double a = coef * scale;
    columns_[var].emplace_back(r, a);
    min_activity += std::min(a * base_lower_[var], a * base_upper_[var]);
  }
  const double rhs = row.rhs * scale;
  row_rhs_.push_back(rhs);
  row_scale_.push_back(scale);

  // Equality rows pin the slack at zero; inequality slacks get a finite cap
  // from the box so that every variable stays bounded.
  const double slack_hi =
      row.sense == RowSense::Equal ? 0.0 : std::max(0.0, rhs - min_activity);
  lower_.push_back(0.0);
  upper_.push_back(slack_hi);
  const int slack = num_structural_ + r;

  if (basis_valid_) {
    // Extend the basis with the new slack: B' = [[B, 0], [a_B, 1]], whose
    // inverse gains the bottom row -a_B * Binv and a trailing unit column.
    const int m = r;
    std::vector<double> coef_of_basic(m, 0.0);
    double val = rhs;
    for (const auto& [var, coef] : row.terms) {
      const double a = coef * scale;
      if (status_[var] == kBasic) coef_of_basic[row_of_var_[var]] += a;
      val -= a * var_value(var);
    }
    std::vector<double> nb(static_cast<std::size_t>(m + 1) * (m + 1), 0.0);
    for (int c = 0; c < m; ++c) {
      const double* src = &binv_[static_cast<std::size_t>(c) * m];
      double* dst = &nb[static_cast<std::size_t>(c) * (m + 1)];
      double g = 0.0;
      for (int k = 0; k < m; ++k) {
        dst[k] = src[k];
        g += coef_of_basic[k] * src[k];
      }
      dst[m] = -g;
    }
    nb[static_cast<std::size_t>(m) * (m + 1) + m] = 1.0;
    binv_ = std::move(nb);

    basic_var_.push_back(slack);
    status_.push_back(kBasic);
    row_of_var_.push_back(r);
    basic_value_.push_back(val);
  } else {
    status_.push_back(kAtLower);
    row_of_var_.push_back(-1);
  }
  return r;
}

void IncrementalLp::set_node_bounds(const std::vector<std::pair<int, double>>& fixings) {
  for (int j = 0; j < num_structural_; ++j) {
    lower_[j] = base_lower_[j];
    upper_[j] = base_upper_[j];
  }
  for (const auto& [var, value] : fixings) {
    lower_[var] = value;
    upper_[var] = value;
  }
}

double IncrementalLp::lower_of(int var) const { return lower_[var]; }
double IncrementalLp::upper_of(int var) const { return upper_[var]; }

double IncrementalLp::var_value(int var) const {
  if (status_[var] == kBasic) return basic_value_[row_of_var_[var]];
  return status_[var] == kAtLower ? lower_[var] : upper_[var];
}

void IncrementalLp::cold_start() {
  const int m = num_rows();
  basic_var_.resize(m);
  basic_value_.assign(m, 0.0);
  binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
  std::fill(row_of_var_.begin(), row_of_var_.end(), -1);
  for (int j = 0; j < num_structural_; ++j) status_[j] = kAtLower;
  for (int k = 0; k < m; ++k) {
    basic_var_[k] = num_structural_ + k;
    status_[num_structural_ + k] = kBasic;
    row_of_var_[num_structural_ + k] = k;
    binv_[static_cast<std::size_t>(k) * m + k] = 1.0;
  }
  basis_valid_ = true;
  bland_mode_ = false;
  degenerate_run_ = 0;
  recompute_basic_values();
}

void IncrementalLp::recompute_basic_values() {
  const int m = num_rows();
  std::vector<double> t(row_rhs_);
  for (int j = 0; j < num_structural_; ++j) {
    if (status_[j] == kBasic) continue;
    const double v = status_[j] == kAtLower ? lower_[j] : upper_[j];
    if (v == 0.0) continue;
    for (const auto& [r, a] : columns_[j]) t[r] -= a * v;
  }
  for (int k = 0; k < m; ++k) {
    const int sv = num_structural_ + k;
    if (status_[sv] == kBasic) continue;
    const double v = status_[sv] == kAtLower ? lower_[sv] : upper_[sv];
    if (v != 0.0) t[k] -= v;
  }
  std::fill(basic_value_.begin(), basic_value_.end(), 0.0);
  for (int c = 0; c < m; ++c) {
    const double tc = t[c];
    if (tc == 0.0) continue;
    const double* col = &binv_[static_cast<std::size_t>(c) * m];
    for (int k = 0; k < m; ++k) basic_value_[k] += col[k] * tc;
  }
}

bool IncrementalLp::refactorize() {
  // Rebuild the dense inverse of the basis matrix with Gauss-Jordan and
  // partial pivoting; entries stay addressed by true row index and the pivot
  // order permutation is undone at the end.
  const int m = num_rows();
  std::vector<double> mat(static_cast<std::size_t>(m) * m, 0.0);  // column-major
  for (int k = 0; k < m; ++k) {
    const int var = basic_var_[k];
    double* col = &mat[static_cast<std::size_t>(k) * m];
    if (var >= num_structural_) {
      col[var - num_structural_] = 1.0;
    } else {
      for (const auto& [r, a] : columns_[var]) col[r] = a;
    }
  }
  std::vector<double> ops(static_cast<std::size_t>(m) * m, 0.0);
  for (int k = 0; k < m; ++k) ops[static_cast<std::size_t>(k) * m + k] = 1.0;

  std::vector<int> perm(m);
  std::vector<bool> used(m, false);
  for (int piv = 0; piv < m; ++piv) {
    int prow = -1;
    double besta = 1e-11;
    for (int r = 0; r < m; ++r) {
      if (used[r]) continue;
      const double a = std::fabs(mat[static_cast<std::size_t>(piv) * m + r]);
      if (a > besta) {
        besta = a;
        prow = r;
      }
    }
    if (prow < 0) return false;  // singular basis
    used[prow] = true;
    perm[piv] = prow;
    const double d = mat[static_cast<std::size_t>(piv) * m + prow];
    for (int c = 0; c < m; ++c) {
      mat[static_cast<std::size_t>(c) * m + prow] /= d;
      ops[static_cast<std::size_t>(c) * m + prow] /= d;
    }
    for (int r = 0; r < m; ++r) {
      if (r == prow) continue;
      const double f = mat[static_cast<std::size_t>(piv) * m + r];
      if (f == 0.0) continue;
      for (int c = 0; c < m; ++c) {
        mat[static_cast<std::size_t>(c) * m + r] -= f * mat[static_cast<std::size_t>(c) * m + prow];
        ops[static_cast<std::size_t>(c) * m + r] -= f * ops[static_cast<std::size_t>(c) * m + prow];
      }
    }
  }
  // ops * B = P with P e_piv = e_perm[piv], hence Binv row k = ops row perm[k].
  binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int c = 0; c < m; ++c) {
    for (int k = 0; k < m; ++k) {
      binv_[static_cast<std::size_t>(c) * m + k] = ops[static_cast<std::size_t>(c) * m + perm[k]];
    }
  }
  recompute_basic_values();
  return true;
}

void IncrementalLp::compute_duals(const std::vector<double>& cost_basic,
                                  std::vector<double>& y) const {
  const int m = num_rows();
  y.assign(m, 0.0);
  for (int c = 0; c < m; ++c) {
    const double* col = &binv_[static_cast<std::size_t>(c) * m];
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += cost_basic[k] * col[k];
    y[c] = acc;
  }
}

void IncrementalLp::compute_column(int var, std::vector<double>& w) const {
  const int m = num_rows();
  w.assign(m, 0.0);
  if (var >= num_structural_) {
    const double* col = &binv_[static_cast<std::size_t>(var - num_structural_) * m];
    std::copy(col, col + m, w.begin());
    return;
  }
  for (const auto& [r, a] : columns_[var]) {
    const double* col = &binv_[static_cast<std::size_t>(r) * m];
    for (int k = 0; k < m; ++k) w[k] += a * col[k];
  }
}

void IncrementalLp::compute_binv_row(int row, std::vector<double>& beta) const {
  const int m = num_rows();
  beta.assign(m, 0.0);
  for (int c = 0; c < m; ++c) beta[c] = binv_[static_cast<std::size_t>(c) * m + row];
}

void IncrementalLp::apply_pivot(int leaving_row, int entering_var,
                                const std::vector<double>& w) {
  const int m = num_rows();
  const double piv = w[leaving_row];
  for (int c = 0; c < m; ++c) {
    double* col = &binv_[static_cast<std::size_t>(c) * m];
    const double old_r = col[leaving_row];
    if (old_r == 0.0) continue;
    const double new_r = old_r / piv;
    for (int k = 0; k < m; ++k) col[k] -= w[k] * new_r;
    col[leaving_row] = new_r;
  }
  row_of_var_[basic_var_[leaving_row]] = -1;
  basic_var_[leaving_row] = entering_var;
  row_of_var_[entering_var] = leaving_row;
}

double IncrementalLp::reduced_cost(int var, const std::vector<double>& y) const {
  double d = var < num_structural_ ? cost_[var] : 0.0;
  if (var >= num_structural_) {
    d -= y[var - num_structural_];
  } else {
    for (const auto& [r, a] : columns_[var]) d -= y[r] * a;
  }
  return d;
}

bool IncrementalLp::primal_feasible(double* total_violation) const {
  double total = 0.0;
  for (int k = 0; k < num_rows(); ++k) {
    const int var = basic_var_[k];
    const double v = basic_value_[k];
    if (v > upper_[var] + kPrimalTol) total += v - upper_[var];
    if (v < lower_[var] - kPrimalTol) total += lower_[var] - v;
  }
  if (total_violation != nullptr) *total_violation = total;
  return total == 0.0;
}

bool IncrementalLp::ensure_dual_feasible_statuses() {
  std::vector<double> cb(num_rows());
  for (int k = 0; k < num_rows(); ++k) {
    const int var = basic_var_[k];
    cb[k] = var < num_structural_ ? cost_[var] : 0.0;
  }
  std::vector<double> y;
  compute_duals(cb, y);
  const int total = num_structural_ + num_rows();
  for (int var = 0; var < total; ++var) {
    if (status_[var] == kBasic) continue;
    if (is_fixed(var)) continue;
    const double d = reduced_cost(var, y);
    if (status_[var] == kAtLower && d < -kDualTol) status_[var] = kAtUpper;
    else if (status_[var] == kAtUpper && d > kDualTol) status_[var] = kAtLower;
  }
  return true;
}

double IncrementalLp::objective_value() const {
  double obj = 0.0;
  for (int j = 0; j < num_structural_; ++j) {
    if (cost_[j] != 0.0) obj += cost_[j] * var_value(j);
  }
  return obj;
}

LpStatus IncrementalLp::primal_simplex(bool phase_one) {
  const int m = num_rows();
  const int total = num_structural_ + m;
  std::vector<double> cb(m), y, w;

  while (true) {
    if (++iterations_ > kMaxIterationsPerSolve) return LpStatus::IterationLimit;

    double violation = 0.0;
    for (int k = 0; k < m; ++k) {
      const int var = basic_var_[k];
      const double v = basic_value_[k];
      double c = 0.0;
      if (phase_one) {
        if (v > upper_[var] + kPrimalTol) {
          c = 1.0;
          violation += v - upper_[var];
        } else if (v < lower_[var] - kPrimalTol) {
          c = -1.0;
          violation += lower_[var] - v;
        }
      } else {
        c = var < num_structural_ ? cost_[var] : 0.0;
      }
      cb[k] = c;
    }
    if (phase_one && violation == 0.0) return LpStatus::Optimal;

    compute_duals(cb, y);

    int entering = -1;
    double best = 0.0;
    for (int var = 0; var < total; ++var) {
      const auto st = status_[var];
      if (st == kBasic || is_fixed(var)) continue;
      const double c = phase_one ? 0.0 : (var < num_structural_ ? cost_[var] : 0.0);
      double d = c;
      if (var >= num_structural_) {
        d -= y[var - num_structural_];
      } else {
        for (const auto& [r, a] : columns_[var]) d -= y[r] * a;
      }
      const double dtol = kDualTol * (1.0 + std::fabs(c));
      double merit = 0.0;
      if (st == kAtLower && d < -dtol) merit = -d;
      else if (st == kAtUpper && d > dtol) merit = d;
      if (merit > 0.0) {
        if (bland_mode_) {
          entering = var;
          break;
        }
        if (merit > best) {
          best = merit;
          entering = var;
        }
      }
    }
    if (entering < 0) {
      if (phase_one) return violation > 0.0 ? LpStatus::Infeasible : LpStatus::Optimal;
      return LpStatus::Optimal;
    }

    const double sigma = status_[entering] == kAtLower ? 1.0 : -1.0;
    compute_column(entering, w);

    // Ratio test: basics block at a bound; the entering variable itself can
    // flip bound to bound. In phase one a basic outside its bounds blocks
    // only when moving toward the violated bound.
    double theta = upper_[entering] - lower_[entering];
    int block_row = -1;
    double block_pivot = 0.0;
    double block_target = 0.0;
    for (int k = 0; k < m; ++k) {
      if (std::fabs(w[k]) <= kPivotTol) continue;
      const double delta = -sigma * w[k];  // rate of change of basic k
      const int var = basic_var_[k];
      const double v = basic_value_[k];
      const double lo = lower_[var];
      const double hi = upper_[var];
      double target;
      if (delta < 0.0) {
        if (phase_one && v < lo - kPrimalTol) continue;  // moving away below lower
        target = (phase_one && v > hi + kPrimalTol) ? hi : lo;
      } else {
        if (phase_one && v > hi + kPrimalTol) continue;  // moving away above upper
        target = (phase_one && v < lo - kPrimalTol) ? lo : hi;
      }
      double t = (target - v) / delta;
      if (t < 0.0) t = 0.0;
      if (t > theta + kTieTol) continue;
      bool take;
      if (block_row < 0 || t < theta - kTieTol) {
        take = true;
      } else if (bland_mode_) {
        take = var < basic_var_[block_row];
      } else {
        take = std::fabs(w[k]) > std::fabs(block_pivot) + kTieTol ||
               (std::fabs(std::fabs(w[k]) - std::fabs(block_pivot)) <= kTieTol &&
                var < basic_var_[block_row]);
      }
      if (take) {
        theta = std::min(theta, t);
        block_row = k;
        block_pivot = w[k];
        block_target = target;
      }
    }

    if (theta <= kDegenerateStep) {
      if (++degenerate_run_ > kBlandTrigger) bland_mode_ = true;
    } else {
      degenerate_run_ = 0;
      bland_mode_ = false;
    }

    if (block_row < 0) {
      // Bound flip.
      for (int k = 0; k < m; ++k) basic_value_[k] -= sigma * theta * w[k];
      status_[entering] = status_[entering] == kAtLower ? kAtUpper : kAtLower;
      continue;
    }

    const int leaving = basic_var_[block_row];
    const double enter_from = status_[entering] == kAtLower ? lower_[entering] : upper_[entering];
    for (int k = 0; k < m; ++k) basic_value_[k] -= sigma * theta * w[k];
    basic_value_[block_row] = enter_from + sigma * theta;
    status_[leaving] = block_target == lower_[leaving] ? kAtLower : kAtUpper;
    status_[entering] = kBasic;
    apply_pivot(block_row, entering, w);
  }
}

LpStatus IncrementalLp::dual_simplex() {
  const int m = num_rows();
  const int total = num_structural_ + m;
  std::vector<double> cb(m), y, beta, w;

  while (true) {
    if (++iterations_ > kMaxIterationsPerSolve) return LpStatus::IterationLimit;

    int leave_row = -1;
    double worst = kPrimalTol;
    bool above_upper = false;
    for (int k = 0; k < m; ++k) {
      const int var = basic_var_[k];
      const double v = basic_value_[k];
      const double over = v - upper_[var];
      const double under = lower_[var] - v;
      if (over > worst) {
        worst = over;
        leave_row = k;
        above_upper = true;
      }
      if (under > worst) {
        worst = under;
        leave_row = k;
        above_upper = false;
      }
    }
    if (leave_row < 0) return LpStatus::Optimal;

    for (int k = 0; k < m; ++k) {
      const int var = basic_var_[k];
      cb[k] = var < num_structural_ ? cost_[var] : 0.0;
    }
    compute_duals(cb, y);
    compute_binv_row(leave_row, beta);

    const double sign = above_upper ? 1.0 : -1.0;
    int entering = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_step = 0.0;
    for (int var = 0; var < total; ++var) {
      const auto st = status_[var];
      if (st == kBasic || is_fixed(var)) continue;
      double alpha = 0.0;
      if (var >= num_structural_) {
        alpha = beta[var - num_structural_];
      } else {
        for (const auto& [r, a] : columns_[var]) alpha += beta[r] * a;
      }
      const double eff = sign * alpha;
      // At lower the entering variable can only increase; it drives the
      // leaving value toward its violated bound only for eff > 0. Symmetric
      // at upper.
      double step;
      if (st == kAtLower && eff > kPivotTol) step = eff;
      else if (st == kAtUpper && eff < -kPivotTol) step = -eff;
      else continue;
      const double ratio = std::fabs(reduced_cost(var, y)) / step;
      bool take;
      if (entering < 0 || ratio < best_ratio - kTieTol) {
        take = true;
      } else if (ratio <= best_ratio + kTieTol) {
        take = bland_mode_ ? var < entering : step > best_step + kTieTol;
      } else {
        take = false;
      }
      if (take) {
        best_ratio = ratio;
        best_step = step;
        entering = var;
      }
    }
    if (entering < 0) return LpStatus::Infeasible;

    const int leaving = basic_var_[leave_row];
    const double target = above_upper ? upper_[leaving] : lower_[leaving];
    const double sigma = status_[entering] == kAtLower ? 1.0 : -1.0;
    compute_column(entering, w);
    const double t = (basic_value_[leave_row] - target) / (sigma * w[leave_row]);

    if (std::fabs(t) <= kDegenerateStep) {
      if (++degenerate_run_ > kBlandTrigger) bland_mode_ = true;
    } else {
      degenerate_run_ = 0;
      bland_mode_ = false;
    }

    const double enter_from = status_[entering] == kAtLower ? lower_[entering] : upper_[entering];
    for (int k = 0; k < m; ++k) basic_value_[k] -= sigma * t * w[k];
    basic_value_[leave_row] = enter_from + sigma * t;
    status_[leaving] = above_upper ? kAtUpper : kAtLower;
    status_[entering] = kBasic;
    apply_pivot(leave_row, entering, w);
  }
}

LpSolution IncrementalLp::solve() {
  LpSolution out;
  const int m = num_rows();
  if (m == 0) {
    out.status = LpStatus::Optimal;
    out.x.resize(num_structural_);
    for (int j = 0; j < num_structural_; ++j) {
      out.x[j] = cost_[j] >= 0.0 ? lower_[j] : upper_[j];
      out.objective += cost_[j] * out.x[j];
    }
    return out;
  }

  LpStatus status = LpStatus::IterationLimit;
  bool solved = false;
  if (basis_valid_) {
    ensure_dual_feasible_statuses();
    recompute_basic_values();
    bland_mode_ = false;
    degenerate_run_ = 0;
    status = dual_simplex();
    if (status == LpStatus::Optimal || status == LpStatus::Infeasible) solved = true;
  }
  if (!solved) {
    cold_start();
    status = primal_simplex(/*phase_one=*/true);
    if (status == LpStatus::Optimal) status = primal_simplex(/*phase_one=*/false);
  }

  if (status == LpStatus::Optimal) {
    // Guard against drift in the updated inverse.
    std::vector<double> before(basic_value_);
    recompute_basic_values();
    double drift = 0.0;
    for (int k = 0; k < m; ++k) drift = std::max(drift, std::fabs(before[k] - basic_value_[k]));
    double viol = 0.0;
    primal_feasible(&viol);
    if (drift > 1e-7 || viol > 0.0) {
      if (refactorize()) {
        bland_mode_ = false;
        degenerate_run_ = 0;
        status = dual_simplex();
        if (status == LpStatus::Optimal) status = primal_simplex(/*phase_one=*/false);
      }
    }
  }

  out.status = status;
  if (status == LpStatus::Optimal) {
    out.objective = objective_value();
    out.x.resize(num_structural_);
    for (int j = 0; j < num_structural_; ++j) out.x[j] = var_value(j);
  } else if (status != LpStatus::Infeasible) {
    basis_valid_ = false;
  }
  return out;
}

LpSolution solve_lp(const std::vector<LpRow>& rows, std::vector<double> lower,
                    std::vector<double> upper, std::vector<double> objective,
                    const std::vector<std::pair<int, double>>& extra_fixings) {
  IncrementalLp lp(std::move(lower), std::move(upper), std::move(objective));
  for (const auto& row : rows) lp.add_row(row);
  if (!extra_fixings.empty()) lp.set_node_bounds(extra_fixings);
  return lp.solve();
}

}  // namespace dronenet
