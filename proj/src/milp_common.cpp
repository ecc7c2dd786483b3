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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "dronenet/errors.hpp"
#include "dronenet/milp.hpp"

namespace dronenet {

std::vector<int> LinearizedModel::binaries() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(var_info.size()); ++v) {
    if (var_info[v].integral) out.push_back(v);
  }
  return out;
}

std::vector<double> compute_u_bounds(const Instance& inst, const ServiceMoments& moments,
                                     double rho_cap) {
  if (!(rho_cap > 0.0) || rho_cap >= 1.0) {
    throw DegenerateBound("rho_cap must lie in (0, 1)");
  }
  const double per_server = std::min(rho_cap, 1.0 - inst.params().epsilon_ss);
  const int nj = inst.num_bases();
  const int m_max = inst.params().M;
  std::vector<double> out(static_cast<std::size_t>(nj) * m_max, 0.0);

  for (int j = 0; j < nj; ++j) {
    const auto& catchment = inst.demands_in_catchment(j);
    struct Item {
      double weight;  // lambda * E[S]
      double value;   // lambda * E[S^2]
    };
    std::vector<Item> items;
    items.reserve(catchment.size());
    double total_weight = 0.0;
    for (int l : catchment) {
      const double lam = inst.demands()[l].lambda;
      items.push_back(Item{lam * moments.mean_at(l, j), lam * moments.second_at(l, j)});
      total_weight += items.back().weight;
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      return a.value * b.weight > b.value * a.weight;  // by value density, stable ordering
    });

    for (int m = 1; m <= m_max; ++m) {
      if (items.empty()) continue;
      const double budget = static_cast<double>(m) * per_server;
      double remaining = budget;
      double numerator = 0.0;
      for (const Item& it : items) {
        if (remaining <= 0.0) break;
        const double frac = std::min(1.0, remaining / it.weight);
        numerator += frac * it.value;
        remaining -= frac * it.weight;
      }
      const double load = std::min(budget, total_weight);
      const double margin = static_cast<double>(m) - budget;
      double mfact = 1.0;
      for (int n = 2; n <= m; ++n) mfact *= n;
      out[static_cast<std::size_t>(j) * m_max + m - 1] =
          numerator * std::pow(load, m - 1) / (margin * mfact);
    }
    // Nest the bounds downward: when a base runs more than m drones the
    // level-m delay variable is released from its defining row and must be
    // able to dominate the higher-level value (keeps the monotonicity cut
    // satisfiable at every integer point).
    for (int m = m_max - 1; m >= 1; --m) {
      auto& lo = out[static_cast<std::size_t>(j) * m_max + m - 1];
      lo = std::max(lo, out[static_cast<std::size_t>(j) * m_max + m]);
    }
  }
  return out;
}

std::vector<ModelRow> gamma_expand(const Instance& inst, const ServiceMoments& moments,
                                   const GammaVarRefs& refs) {
  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  const int m_max = inst.params().M;
  const auto& x_idx = *refs.x_index;
  const auto& y_idx = *refs.y_index;
  const auto& g_idx = *refs.gamma_index;
  std::vector<ModelRow> rows;

  // Steady state: offered load within the capped capacity of the level.
  for (int j = 0; j < nj; ++j) {
    LpRow row;
    for (int l : inst.demands_in_catchment(j)) {
      row.terms.emplace_back(y_idx[static_cast<std::size_t>(l) * nj + j],
                             inst.demands()[l].lambda * moments.mean_at(l, j));
    }
    for (int m = 1; m <= m_max; ++m) {
      row.terms.emplace_back(g_idx[static_cast<std::size_t>(j) * m_max + m - 1],
                             -inst.load_cap(m));
    }
    row.sense = RowSense::LessEqual;
    row.rhs = 0.0;
    rows.push_back(ModelRow{std::move(row), RowClass::Structural});
  }
  // Open/count linking: x_j <= sum m*gamma <= M x_j.
  for (int j = 0; j < nj; ++j) {
    LpRow row;
    row.terms.emplace_back(x_idx[j], 1.0);
    for (int m = 1; m <= m_max; ++m) {
      row.terms.emplace_back(g_idx[static_cast<std::size_t>(j) * m_max + m - 1],
                             -static_cast<double>(m));
    }
    row.sense = RowSense::LessEqual;
    row.rhs = 0.0;
    rows.push_back(ModelRow{std::move(row), RowClass::Structural});
  }
  for (int j = 0; j < nj; ++j) {
    LpRow row;
    for (int m = 1; m <= m_max; ++m) {
      row.terms.emplace_back(g_idx[static_cast<std::size_t>(j) * m_max + m - 1],
                             static_cast<double>(m));
    }
    row.terms.emplace_back(x_idx[j], -static_cast<double>(m_max));
    row.sense = RowSense::LessEqual;
    row.rhs = 0.0;
    rows.push_back(ModelRow{std::move(row), RowClass::Structural});
  }
  // Fleet total.
  {
    LpRow row;
    for (int j = 0; j < nj; ++j) {
      for (int m = 1; m <= m_max; ++m) {
        row.terms.emplace_back(g_idx[static_cast<std::size_t>(j) * m_max + m - 1],
                               static_cast<double>(m));
      }
    }
    row.sense = RowSense::Equal;
    row.rhs = static_cast<double>(inst.params().p);
    rows.push_back(ModelRow{std::move(row), RowClass::Structural});
  }
  // At most one active level per base.
  for (int j = 0; j < nj; ++j) {
    LpRow row;
    for (int m = 1; m <= m_max; ++m) {
      row.terms.emplace_back(g_idx[static_cast<std::size_t>(j) * m_max + m - 1], 1.0);
    }
    row.sense = RowSense::LessEqual;
    row.rhs = 1.0;
    rows.push_back(ModelRow{std::move(row), RowClass::Structural});
  }
  (void)ni;
  return rows;
}

namespace {
double row_tolerance(const LpRow& row) {
  double maxabs = 1.0;
  for (const auto& [var, coef] : row.terms) maxabs = std::max(maxabs, std::fabs(coef));
  return 1e-5 * maxabs;
}
}  // namespace

Design design_from_point(const LinearizedModel& model, const std::vector<double>& point) {
  const Instance& inst = *model.instance;
  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  const int m_max = inst.params().M;

  for (int v : model.binaries()) {
    if (std::fabs(point[v] - std::round(point[v])) > 1e-6) {
      throw NonIntegral("variable " + model.var_info[v].name + " = " + std::to_string(point[v]));
    }
  }

  Design d;
  d.open.assign(nj, 0);
  d.drones.assign(nj, 0);
  d.gamma.assign(static_cast<std::size_t>(nj) * m_max, 0);
  d.assigned_base.assign(ni, -1);
  for (int j = 0; j < nj; ++j) {
    d.open[j] = point[model.x_index[j]] > 0.5 ? 1 : 0;
    for (int m = 1; m <= m_max; ++m) {
      const int g = point[model.gamma_index[static_cast<std::size_t>(j) * m_max + m - 1]] > 0.5;
      d.gamma[static_cast<std::size_t>(j) * m_max + m - 1] = static_cast<std::uint8_t>(g);
      if (g) d.drones[j] += m;
    }
  }
  for (int i = 0; i < ni; ++i) {
    for (int j : inst.bases_covering(i)) {
      if (point[model.y_at(i, j)] > 0.5) {
        if (d.assigned_base[i] >= 0) throw RowInfeasible("demand assigned twice");
        d.assigned_base[i] = j;
      }
    }
    if (d.assigned_base[i] < 0) throw RowInfeasible("demand unassigned");
  }

  for (int rid : model.core_rows) {
    const LpRow& row = model.rows[rid].row;
    double act = 0.0;
    for (const auto& [var, coef] : row.terms) act += coef * point[var];
    const double tol = row_tolerance(row);
    const bool ok = row.sense == RowSense::LessEqual      ? act <= row.rhs + tol
                    : row.sense == RowSense::GreaterEqual ? act >= row.rhs - tol
                                                          : std::fabs(act - row.rhs) <= tol;
    if (!ok) {
      throw RowInfeasible("row " + std::to_string(rid) + " violated by " +
                          std::to_string(act - row.rhs));
    }
  }
  return d;
}

void export_lp_text(const LinearizedModel& model, std::ostream& os) {
  auto write_terms = [&](const std::vector<std::pair<int, double>>& terms) {
    bool first = true;
    for (const auto& [var, coef] : terms) {
      if (coef == 0.0) continue;
      if (first) {
        os << (coef < 0 ? "- " : "");
      } else {
        os << (coef < 0 ? " - " : " + ");
      }
      os << std::fabs(coef) << " " << model.var_info[var].name;
      first = false;
    }
    if (first) os << "0";
  };

  os << "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj_terms;
  for (int v = 0; v < static_cast<int>(model.objective.size()); ++v) {
    if (model.objective[v] != 0.0) obj_terms.emplace_back(v, model.objective[v]);
  }
  write_terms(obj_terms);
  os << "\nSubject To\n";
  for (int rid = 0; rid < static_cast<int>(model.rows.size()); ++rid) {
    const auto& mr = model.rows[rid];
    os << " r" << rid << ": ";
    write_terms(mr.row.terms);
    os << (mr.row.sense == RowSense::LessEqual      ? " <= "
           : mr.row.sense == RowSense::GreaterEqual ? " >= "
                                                    : " = ")
       << mr.row.rhs << "\n";
  }
  os << "Bounds\n";
  for (int v = 0; v < static_cast<int>(model.var_info.size()); ++v) {
    const auto& info = model.var_info[v];
    if (!info.integral) os << " " << info.lower << " <= " << info.name << " <= " << info.upper << "\n";
  }
  os << "Binaries\n";
  for (int v : model.binaries()) os << " " << model.var_info[v].name << "\n";
  os << "End\n";
}

}  // namespace dronenet
