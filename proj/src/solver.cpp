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

#include "dronenet/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <queue>

#include "dronenet/errors.hpp"
#include "dronenet/queueing.hpp"

namespace dronenet {

namespace {
constexpr double kSeparationTol = 1e-7;
constexpr double kIntegralityTol = 1e-6;

double row_violation(const LpRow& row, const std::vector<double>& point) {
  double act = 0.0;
  for (const auto& [var, coef] : row.terms) act += coef * point[var];
  switch (row.sense) {
    case RowSense::LessEqual: return act - row.rhs;
    case RowSense::GreaterEqual: return row.rhs - act;
    case RowSense::Equal: return std::fabs(act - row.rhs);
  }
  return 0.0;
}

struct Node {
  double bound;
  int depth;
  std::int64_t seq;
  std::vector<std::pair<int, double>> fixings;
};

struct NodeOrder {
  // Best bound first; ties by depth, then insertion order.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.seq > b.seq;
  }
};
}  // namespace

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::REFO: return "refo";
    case SolveMode::OA: return "oa";
    case SolveMode::OA_BC: return "oa_bc";
  }
  return "?";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::NodeLimit: return "node_limit";
    case SolveStatus::OracleFailure: return "oracle_failure";
  }
  return "?";
}

std::vector<int> separate_lazy(const LinearizedModel& model, const std::vector<double>& point,
                               const std::vector<int>& pool) {
  std::vector<int> violated;
  for (int rid : pool) {
    if (row_violation(model.rows[rid].row, point) > kSeparationTol) violated.push_back(rid);
  }
  return violated;
}

std::vector<int> separate_usercuts(const LinearizedModel& model, const std::vector<double>& point,
                                   const std::vector<int>& pool) {
  return separate_lazy(model, point, pool);
}

int branch_variable(const LinearizedModel& model, const std::vector<double>& point) {
  int best = -1;
  double best_frac = kIntegralityTol;
  for (int v : model.binaries()) {
    const double frac = std::min(point[v] - std::floor(point[v]),
                                 std::ceil(point[v]) - point[v]);
    if (frac > best_frac) {
      best_frac = frac;
      best = v;
    }
  }
  if (best < 0) throw NoFractionalVar("point is integral on all binaries");
  return best;
}

SolveReport solve(const LinearizedModel& model, SolveMode mode, const SolveParams& params) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };

  SolveReport report;
  const bool usercuts_on =
      params.enable_usercuts.value_or(mode == SolveMode::OA_BC) && !model.usercut_pool.empty();
  const bool vi5_on = params.enable_vi5.value_or(mode == SolveMode::OA_BC);

  // Initial lazy pool and active set.
  std::vector<int> lazy_pool;
  if (mode != SolveMode::REFO) {
    lazy_pool = model.lazy_pool;
    if (vi5_on) lazy_pool.insert(lazy_pool.end(), model.vi5_rows.begin(), model.vi5_rows.end());
  } else if (vi5_on && mode == SolveMode::REFO) {
    lazy_pool = model.vi5_rows;  // cut experiments on the full model
  }
  std::vector<bool> in_lazy(model.rows.size(), false);
  for (int rid : lazy_pool) in_lazy[rid] = true;

  std::vector<int> user_pool = usercuts_on ? model.usercut_pool : std::vector<int>{};

  std::vector<double> lb, ub, cost(model.objective);
  lb.reserve(model.var_info.size());
  ub.reserve(model.var_info.size());
  for (const auto& vi : model.var_info) {
    lb.push_back(vi.lower);
    ub.push_back(vi.upper);
  }
  cost.resize(model.var_info.size(), 0.0);
  IncrementalLp engine(std::move(lb), std::move(ub), std::move(cost));
  for (int rid : model.core_rows) {
    if (!in_lazy[rid]) engine.add_row(model.rows[rid].row);
  }
  if (mode == SolveMode::REFO && usercuts_on) {
    for (int rid : model.usercut_pool) engine.add_row(model.rows[rid].row);
    user_pool.clear();
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::int64_t next_seq = 0;
  open.push(Node{0.0, 0, next_seq++, {}});

  double incumbent_obj = std::numeric_limits<double>::infinity();
  Design incumbent;
  bool has_incumbent = false;
  double pruned_lb = std::numeric_limits<double>::infinity();
  double processed_lb = 0.0;

  auto prune_threshold = [&] {
    if (!has_incumbent) return std::numeric_limits<double>::infinity();
    return incumbent_obj - params.gap_tolerance * std::max(std::fabs(incumbent_obj), 1e-12);
  };
  auto trace = [&](std::int64_t node_id, double bound, const char* action, double extra = 0.0) {
    if (params.trace != nullptr) {
      (*params.trace) << "node " << node_id << " bound " << bound << " " << action;
      if (extra != 0.0) (*params.trace) << " " << extra;
      (*params.trace) << "\n";
    }
  };

  SolveStatus status = SolveStatus::Optimal;
  while (!open.empty()) {
    if (elapsed() > params.time_limit_s) {
      status = SolveStatus::TimeLimit;
      break;
    }
    if (params.node_limit >= 0 && report.nodes >= params.node_limit) {
      status = SolveStatus::NodeLimit;
      break;
    }

    Node node = open.top();
    open.pop();
    processed_lb = std::max(processed_lb, std::min(node.bound, incumbent_obj));
    if (node.bound >= prune_threshold()) {
      pruned_lb = std::min(pruned_lb, node.bound);
      continue;
    }

    ++report.nodes;
    engine.set_node_bounds(node.fixings);
    LpSolution lp = engine.solve();
    report.lp_iterations = engine.iterations();
    if (lp.status == LpStatus::Infeasible) {
      trace(report.nodes, node.bound, "infeasible");
      continue;
    }
    if (lp.status != LpStatus::Optimal) {
      report.status = SolveStatus::OracleFailure;
      report.wall_time_s = elapsed();
      return report;
    }
    const double bound = std::max(node.bound, lp.objective);
    if (bound >= prune_threshold()) {
      pruned_lb = std::min(pruned_lb, bound);
      trace(report.nodes, bound, "pruned");
      continue;
    }

    bool integral = true;
    for (int v : model.binaries()) {
      const double frac =
          std::min(lp.x[v] - std::floor(lp.x[v]), std::ceil(lp.x[v]) - lp.x[v]);
      if (frac > kIntegralityTol) {
        integral = false;
        break;
      }
    }

    if (!integral) {
      if (!user_pool.empty()) {
        const std::vector<int> violated = separate_usercuts(model, lp.x, user_pool);
        if (!violated.empty()) {
          for (int rid : violated) {
            engine.add_row(model.rows[rid].row);
            user_pool.erase(std::find(user_pool.begin(), user_pool.end(), rid));
          }
          report.user_cuts_applied += static_cast<std::int64_t>(violated.size());
          trace(report.nodes, bound, "usercuts", static_cast<double>(violated.size()));
          open.push(Node{bound, node.depth, next_seq++, std::move(node.fixings)});
          continue;
        }
      }
      const int var = branch_variable(model, lp.x);
      trace(report.nodes, bound, "branch", static_cast<double>(var));
      auto fix0 = node.fixings;
      fix0.emplace_back(var, 0.0);
      open.push(Node{bound, node.depth + 1, next_seq++, std::move(fix0)});
      auto fix1 = std::move(node.fixings);
      fix1.emplace_back(var, 1.0);
      open.push(Node{bound, node.depth + 1, next_seq++, std::move(fix1)});
      continue;
    }

    // Integer candidate: reinstate any violated lazy rows globally and
    // discard the point; otherwise accept it as the incumbent.
    const std::vector<int> violated = separate_lazy(model, lp.x, lazy_pool);
    if (!violated.empty()) {
      for (int rid : violated) {
        engine.add_row(model.rows[rid].row);
        lazy_pool.erase(std::find(lazy_pool.begin(), lazy_pool.end(), rid));
        in_lazy[rid] = false;
      }
      report.lazy_reinstated += static_cast<std::int64_t>(violated.size());
      trace(report.nodes, bound, "lazy", static_cast<double>(violated.size()));
      open.push(Node{bound, node.depth, next_seq++, std::move(node.fixings)});
      continue;
    }

    Design design = design_from_point(model, lp.x);
    const QueueMetrics qm = average_response(*model.instance, model.moments, design);
    const double rel_err = std::fabs(qm.avg_resp - lp.objective) /
                           std::max(1e-12, std::fabs(qm.avg_resp));
    if (rel_err > 1e-6) {
      if (params.trace != nullptr) {
        (*params.trace) << "objective mismatch: model " << lp.objective << " vs evaluator "
                        << qm.avg_resp << " (rel " << rel_err << ")\n";
      }
      throw OracleFailure("integer candidate objective disagrees with the queueing evaluator: " +
                          std::to_string(lp.objective) + " vs " + std::to_string(qm.avg_resp));
    }
    if (qm.avg_resp < incumbent_obj) {
      incumbent_obj = qm.avg_resp;
      incumbent = std::move(design);
      has_incumbent = true;
      trace(report.nodes, bound, "incumbent", incumbent_obj);
    } else {
      trace(report.nodes, bound, "dominated");
    }
  }

  // Lower bound certified by the search: remaining/pruned nodes or the
  // incumbent itself when everything was enumerated.
  double lower = has_incumbent ? incumbent_obj : 0.0;
  if (status != SolveStatus::Optimal) {
    // interrupted: weakest open information
    double open_min = pruned_lb;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> rest(open);
    if (!rest.empty()) open_min = std::min(open_min, rest.top().bound);
    lower = std::min(std::isfinite(open_min) ? open_min : lower, lower);
    lower = std::max(lower, processed_lb);
  } else if (std::isfinite(pruned_lb)) {
    lower = std::min(lower, pruned_lb);
  }

  report.status = status;
  report.has_incumbent = has_incumbent;
  if (has_incumbent) {
    report.incumbent = incumbent;
    report.objective = incumbent_obj;
  } else if (status == SolveStatus::Optimal) {
    report.status = SolveStatus::Infeasible;
  }
  report.lower_bound = lower;
  report.gap = !has_incumbent ? std::numeric_limits<double>::infinity()
                              : std::max(0.0, (incumbent_obj - lower) /
                                                  std::max(std::fabs(incumbent_obj), 1e-12));
  report.wall_time_s = elapsed();
  return report;
}

}  // namespace dronenet
