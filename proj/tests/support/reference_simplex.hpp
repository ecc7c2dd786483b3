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

#ifndef DRONENET_TESTS_SUPPORT_REFERENCE_SIMPLEX_HPP
#define DRONENET_TESTS_SUPPORT_REFERENCE_SIMPLEX_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "dronenet/lp.hpp"

namespace dronenet::testing {

// Deliberately naive two-phase dense-tableau simplex used as an independent
// oracle for the production LP path. Bounds become explicit rows after
// shifting each variable to its lower bound; pivoting is Bland's rule
// throughout.
class ReferenceSimplex {
 public:
  // Returns status only; objective via objective().
  LpStatus solve(const std::vector<LpRow>& rows, const std::vector<double>& lower,
                 const std::vector<double>& upper, const std::vector<double>& cost) {
    const int n = static_cast<int>(cost.size());
    // shift x = l + x', x' in [0, u - l]
    struct R {
      std::vector<double> a;
      double b;
      int sense;  // -1 le, 0 eq, +1 ge
    };
    std::vector<R> rs;
    for (const auto& row : rows) {
      R r;
      r.a.assign(n, 0.0);
      double shift = 0.0;
      for (const auto& [var, coef] : row.terms) {
        r.a[var] += coef;
        shift += coef * lower[var];
      }
      r.b = row.rhs - shift;
      r.sense = row.sense == RowSense::LessEqual ? -1 : row.sense == RowSense::Equal ? 0 : 1;
      rs.push_back(std::move(r));
    }
    for (int v = 0; v < n; ++v) {
      R r;
      r.a.assign(n, 0.0);
      r.a[v] = 1.0;
      r.b = upper[v] - lower[v];
      r.sense = -1;
      rs.push_back(std::move(r));
    }
    const int m = static_cast<int>(rs.size());
    for (auto& r : rs) {
      if (r.b < 0.0) {
        for (auto& a : r.a) a = -a;
        r.b = -r.b;
        r.sense = -r.sense;
      }
    }
    int num_slack = 0;
    for (const auto& r : rs) {
      if (r.sense != 0) ++num_slack;
    }
    const int cols = n + num_slack + m;  // structural, slack, artificial
    tab_.assign(m, std::vector<double>(cols + 1, 0.0));
    basis_.assign(m, -1);
    int slack_at = n;
    for (int i = 0; i < m; ++i) {
      for (int v = 0; v < n; ++v) tab_[i][v] = rs[i].a[v];
      tab_[i][cols] = rs[i].b;
      if (rs[i].sense == -1) {
        tab_[i][slack_at] = 1.0;
        basis_[i] = slack_at;  // feasible slack start
        ++slack_at;
      } else if (rs[i].sense == 1) {
        tab_[i][slack_at] = -1.0;
        ++slack_at;
      }
      if (basis_[i] < 0) {
        tab_[i][n + num_slack + i] = 1.0;
        basis_[i] = n + num_slack + i;
      }
    }
    // phase 1
    std::vector<double> c1(cols, 0.0);
    for (int i = 0; i < m; ++i) {
      if (basis_[i] >= n + num_slack) c1[basis_[i]] = 1.0;
    }
    if (!run(c1, cols)) return LpStatus::IterationLimit;
    double inf_sum = 0.0;
    for (int i = 0; i < m; ++i) {
      if (basis_[i] >= n + num_slack) inf_sum += tab_[i][cols];
    }
    if (inf_sum > 1e-7) return LpStatus::Infeasible;
    // Drive basic artificials out wherever the row has an eligible pivot;
    // rows without one are redundant and stay inert.
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < n + num_slack) continue;
      for (int v = 0; v < n + num_slack; ++v) {
        if (std::fabs(tab_[i][v]) > 1e-7) {
          pivot(i, v);
          break;
        }
      }
    }
    std::vector<double> c2(cols, 0.0);
    for (int v = 0; v < n; ++v) c2[v] = cost[v];
    if (!run(c2, n + num_slack)) return LpStatus::IterationLimit;
    objective_ = 0.0;
    x_.assign(n, 0.0);
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < n) x_[basis_[i]] = tab_[i][cols];
    }
    for (int v = 0; v < n; ++v) {
      x_[v] += lower[v];
      objective_ += cost[v] * x_[v];
    }
    return LpStatus::Optimal;
  }

  double objective() const { return objective_; }
  const std::vector<double>& solution() const { return x_; }

 private:
  bool run(const std::vector<double>& cost, int allowed_cols) {
    const int m = static_cast<int>(tab_.size());
    const int cols = static_cast<int>(tab_[0].size()) - 1;
    for (long iter = 0; iter < 200000; ++iter) {
      // reduced costs via the basis rows
      std::vector<double> d(cost.begin(), cost.begin() + cols);
      for (int i = 0; i < m; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (int v = 0; v < cols; ++v) d[v] -= cb * tab_[i][v];
      }
      int entering = -1;
      for (int v = 0; v < allowed_cols; ++v) {  // Bland: lowest index
        if (d[v] < -1e-9) {
          entering = v;
          break;
        }
      }
      if (entering < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (tab_[i][entering] > 1e-9) {
          const double ratio = tab_[i][cols] / tab_[i][entering];
          if (ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return true;  // unbounded direction: cannot happen with bound rows
      pivot(leave, entering);
    }
    return false;
  }

  void pivot(int row, int col) {
    const int m = static_cast<int>(tab_.size());
    const int w = static_cast<int>(tab_[0].size());
    const double piv = tab_[row][col];
    for (int v = 0; v < w; ++v) tab_[row][v] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = tab_[i][col];
      if (f == 0.0) continue;
      for (int v = 0; v < w; ++v) tab_[i][v] -= f * tab_[row][v];
    }
    basis_[row] = col;
  }

  std::vector<std::vector<double>> tab_;
  std::vector<int> basis_;
  std::vector<double> x_;
  double objective_ = 0.0;
};

}  // namespace dronenet::testing

#endif  // DRONENET_TESTS_SUPPORT_REFERENCE_SIMPLEX_HPP
