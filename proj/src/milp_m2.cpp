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
#include <string>

#include "dronenet/errors.hpp"
#include "dronenet/milp.hpp"

namespace dronenet {

namespace {

int add_var(LinearizedModel& model, double lo, double hi, bool integral, std::string name) {
  model.var_info.push_back(ModelVar{lo, hi, integral, std::move(name)});
  return static_cast<int>(model.var_info.size()) - 1;
}

int add_row(LinearizedModel& model, RowClass cls, RowSense sense, double rhs,
            std::vector<std::pair<int, double>> terms) {
  std::sort(terms.begin(), terms.end());
  LpRow row;
  row.terms.reserve(terms.size());
  for (const auto& [var, coef] : terms) {
    if (!row.terms.empty() && row.terms.back().first == var) {
      row.terms.back().second += coef;
    } else {
      row.terms.emplace_back(var, coef);
    }
  }
  row.sense = sense;
  row.rhs = rhs;
  model.rows.push_back(ModelRow{std::move(row), cls});
  return static_cast<int>(model.rows.size()) - 1;
}

}  // namespace

LinearizedModel linearize_m2(const Instance& inst, const ServiceMoments& moments) {
  if (inst.params().M != 2) throw InvalidParam("two-drone linearization requires M == 2");
  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  const int m_max = 2;

  LinearizedModel model;
  model.kind = LinearizedModel::Kind::TwoDrone;
  model.instance = &inst;
  model.moments = moments;
  model.u_bound = compute_u_bounds(inst, moments, inst.params().rho_cap);

  VarSpace& vs = model.vars;
  vs.num_demands = ni;
  vs.num_bases = nj;
  vs.levels = m_max;

  auto ub = [&](int j, int m) { return model.u_bound[static_cast<std::size_t>(j) * m_max + m - 1]; };
  auto lam = [&](int l) { return inst.demands()[l].lambda; };

  // -- variables, in fixed block order --------------------------------------
  vs.x_.resize(nj);
  for (int j = 0; j < nj; ++j) vs.x_[j] = add_var(model, 0, 1, true, "x_" + std::to_string(j));

  vs.y_.assign(static_cast<std::size_t>(ni) * nj, -1);
  for (int i = 0; i < ni; ++i) {
    for (int j : inst.bases_covering(i)) {
      vs.y_[static_cast<std::size_t>(i) * nj + j] =
          add_var(model, 0, 1, true, "y_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }

  vs.gamma_.resize(static_cast<std::size_t>(nj) * m_max);
  for (int j = 0; j < nj; ++j) {
    for (int m = 1; m <= m_max; ++m) {
      vs.gamma_[static_cast<std::size_t>(j) * m_max + m - 1] =
          add_var(model, 0, 1, true, "gamma_" + std::to_string(j) + "_" + std::to_string(m));
    }
  }

  vs.u_.resize(static_cast<std::size_t>(nj) * m_max);
  for (int j = 0; j < nj; ++j) {
    for (int m = 1; m <= m_max; ++m) {
      vs.u_[static_cast<std::size_t>(j) * m_max + m - 1] =
          add_var(model, 0, ub(j, m), false, "U_" + std::to_string(j) + "_" + std::to_string(m));
    }
  }

  vs.mu_start_.resize(nj);
  for (int j = 0; j < nj; ++j) {
    vs.mu_start_[j] = static_cast<int>(model.var_info.size());
    for (int l : inst.demands_in_catchment(j)) {
      for (int m = 1; m <= m_max; ++m) {
        add_var(model, 0, ub(j, m), false,
                "mu_" + std::to_string(l) + "_" + std::to_string(j) + "_" + std::to_string(m));
      }
    }
  }

  vs.pairs_.resize(nj);
  vs.z_start_.resize(nj);
  for (int j = 0; j < nj; ++j) {
    vs.z_start_[j] = static_cast<int>(model.var_info.size());
    const auto& cat = inst.demands_in_catchment(j);
    for (std::size_t a = 0; a < cat.size(); ++a) {
      for (std::size_t b = a + 1; b < cat.size(); ++b) {
        vs.pairs_[j].emplace_back(cat[a], cat[b]);
        add_var(model, 0, 1, false,
                "z_" + std::to_string(cat[a]) + "_" + std::to_string(cat[b]) + "_" +
                    std::to_string(j));
      }
    }
  }

  vs.tau_start_.resize(nj);
  for (int j = 0; j < nj; ++j) {
    vs.tau_start_[j] = static_cast<int>(model.var_info.size());
    for (const auto& [l, t] : vs.pairs_[j]) {
      add_var(model, 0, ub(j, 2), false,
              "tau_" + std::to_string(l) + "_" + std::to_string(t) + "_" + std::to_string(j));
    }
  }

  vs.omega_start_.resize(nj);
  for (int j = 0; j < nj; ++j) {
    vs.omega_start_[j] = static_cast<int>(model.var_info.size());
    for (int i : inst.demands_in_catchment(j)) {
      for (int m = 1; m <= m_max; ++m) {
        add_var(model, 0, ub(j, m), false,
                "omega_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(m));
      }
    }
  }

  model.x_index = vs.x_;
  model.y_index = vs.y_;
  model.gamma_index = vs.gamma_;

  // -- objective -------------------------------------------------------------
  model.objective.assign(model.var_info.size(), 0.0);
  const double total_lambda = inst.total_lambda();
  for (int i = 0; i < ni; ++i) {
    const double wi = lam(i) / total_lambda;
    for (int j : inst.bases_covering(i)) {
      model.objective[vs.y(i, j)] = wi * inst.distance(i, j) / inst.params().v;
    }
  }
  for (int j = 0; j < nj; ++j) {
    const auto& cat = inst.demands_in_catchment(j);
    for (std::size_t pos = 0; pos < cat.size(); ++pos) {
      const double wi = lam(cat[pos]) / total_lambda;
      for (int m = 1; m <= m_max; ++m) {
        model.objective[vs.omega(j, static_cast<int>(pos), m)] = wi * 0.5;
      }
    }
  }

  // -- structural rows --------------------------------------------------------
  for (int i = 0; i < ni; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int j : inst.bases_covering(i)) terms.emplace_back(vs.y(i, j), 1.0);
    add_row(model, RowClass::Structural, RowSense::Equal, 1.0, std::move(terms));
  }
  for (int i = 0; i < ni; ++i) {
    for (int j : inst.bases_covering(i)) {
      add_row(model, RowClass::Structural, RowSense::LessEqual, 0.0,
              {{vs.y(i, j), 1.0}, {vs.x(j), -1.0}});
    }
  }
  {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < nj; ++j) terms.emplace_back(vs.x(j), 1.0);
    add_row(model, RowClass::Structural, RowSense::LessEqual, inst.params().q, std::move(terms));
  }
  GammaVarRefs refs{&model.x_index, &model.y_index, &model.gamma_index};
  for (auto& mr : gamma_expand(inst, moments, refs)) {
    model.rows.push_back(std::move(mr));
  }

  // -- delay-variable definitions ---------------------------------------------
  // Level-1 row, conditioned on the level-2 indicator: with two drones the
  // offered load may exceed one, where the level-1 closed form has no
  // nonnegative solution. Written as a big-M pair that collapses to the exact
  // equality whenever gamma_j2 = 0 and releases otherwise.
  for (int j = 0; j < nj; ++j) {
    const auto& cat = inst.demands_in_catchment(j);
    std::vector<std::pair<int, double>> base_terms;
    base_terms.emplace_back(vs.u(j, 1), 1.0);
    double load_total = 0.0;
    double second_total = 0.0;
    for (std::size_t pos = 0; pos < cat.size(); ++pos) {
      const int l = cat[pos];
      const double w = lam(l) * moments.mean_at(l, j);
      const double s2 = lam(l) * moments.second_at(l, j);
      base_terms.emplace_back(vs.mu(j, static_cast<int>(pos), 1), -w);
      base_terms.emplace_back(vs.y(l, j), -s2);
      load_total += w;
      second_total += s2;
    }
    const double big_up = ub(j, 1);
    const double big_dn = ub(j, 1) * load_total + second_total;
    auto upper_terms = base_terms;
    upper_terms.emplace_back(vs.gamma(j, 2), -big_up);
    add_row(model, RowClass::UDef, RowSense::LessEqual, 0.0, std::move(upper_terms));
    auto lower_terms = base_terms;
    lower_terms.emplace_back(vs.gamma(j, 2), big_dn);
    add_row(model, RowClass::UDef, RowSense::GreaterEqual, 0.0, std::move(lower_terms));
  }
  // Level-2 row: 4 U2 - U2 * load^2 = numerator * load, with the square and
  // the bilinear products expanded over the catchment pairs.
  for (int j = 0; j < nj; ++j) {
    const auto& cat = inst.demands_in_catchment(j);
    std::vector<std::pair<int, double>> terms;
    terms.emplace_back(vs.u(j, 2), 4.0);
    for (std::size_t pos = 0; pos < cat.size(); ++pos) {
      const int l = cat[pos];
      const double la = lam(l);
      const double s1 = moments.mean_at(l, j);
      const double s2 = moments.second_at(l, j);
      terms.emplace_back(vs.mu(j, static_cast<int>(pos), 2), -la * la * s1 * s1);
      terms.emplace_back(vs.y(l, j), -la * la * s2 * s1);
    }
    for (std::size_t pr = 0; pr < vs.pairs_[j].size(); ++pr) {
      const auto [l, t] = vs.pairs_[j][pr];
      const double ll = lam(l);
      const double lt = lam(t);
      const double s1l = moments.mean_at(l, j);
      const double s1t = moments.mean_at(t, j);
      const double s2l = moments.second_at(l, j);
      const double s2t = moments.second_at(t, j);
      terms.emplace_back(vs.tau(j, static_cast<int>(pr)), -2.0 * ll * lt * s1l * s1t);
      terms.emplace_back(vs.z(j, static_cast<int>(pr)), -ll * lt * (s2l * s1t + s2t * s1l));
    }
    add_row(model, RowClass::UDef, RowSense::Equal, 0.0, std::move(terms));
  }

  // -- Fortet rows: z = y_l * y_t ---------------------------------------------
  for (int j = 0; j < nj; ++j) {
    for (std::size_t pr = 0; pr < vs.pairs_[j].size(); ++pr) {
      const auto [l, t] = vs.pairs_[j][pr];
      const int zv = vs.z(j, static_cast<int>(pr));
      add_row(model, RowClass::Fortet, RowSense::GreaterEqual, -1.0,
              {{zv, 1.0}, {vs.y(l, j), -1.0}, {vs.y(t, j), -1.0}});
      add_row(model, RowClass::Fortet, RowSense::LessEqual, 0.0, {{zv, 1.0}, {vs.y(l, j), -1.0}});
      add_row(model, RowClass::Fortet, RowSense::LessEqual, 0.0, {{zv, 1.0}, {vs.y(t, j), -1.0}});
    }
  }
  // -- McCormick rows: mu = y * U ----------------------------------------------
  for (int j = 0; j < nj; ++j) {
    const auto& cat = inst.demands_in_catchment(j);
    for (std::size_t pos = 0; pos < cat.size(); ++pos) {
      const int l = cat[pos];
      for (int m = 1; m <= m_max; ++m) {
        const int muv = vs.mu(j, static_cast<int>(pos), m);
        add_row(model, RowClass::McCormickMu, RowSense::LessEqual, 0.0,
                {{muv, 1.0}, {vs.y(l, j), -ub(j, m)}});
        add_row(model, RowClass::McCormickMu, RowSense::LessEqual, 0.0,
                {{muv, 1.0}, {vs.u(j, m), -1.0}});
        add_row(model, RowClass::McCormickMu, RowSense::LessEqual, ub(j, m),
                {{vs.u(j, m), 1.0}, {muv, -1.0}, {vs.y(l, j), ub(j, m)}});
      }
    }
  }
  // -- McCormick rows: tau = z * U2 ---------------------------------------------
  for (int j = 0; j < nj; ++j) {
    for (std::size_t pr = 0; pr < vs.pairs_[j].size(); ++pr) {
      const int tv = vs.tau(j, static_cast<int>(pr));
      const int zv = vs.z(j, static_cast<int>(pr));
      add_row(model, RowClass::McCormickTau, RowSense::LessEqual, 0.0,
              {{tv, 1.0}, {zv, -ub(j, 2)}});
      add_row(model, RowClass::McCormickTau, RowSense::LessEqual, 0.0,
              {{tv, 1.0}, {vs.u(j, 2), -1.0}});
      add_row(model, RowClass::McCormickTau, RowSense::LessEqual, ub(j, 2),
              {{vs.u(j, 2), 1.0}, {tv, -1.0}, {zv, ub(j, 2)}});
    }
  }
  // -- McCormick rows: omega = gamma * mu -----------------------------------------
  for (int j = 0; j < nj; ++j) {
    const auto& cat = inst.demands_in_catchment(j);
    for (std::size_t pos = 0; pos < cat.size(); ++pos) {
      for (int m = 1; m <= m_max; ++m) {
        const int ov = vs.omega(j, static_cast<int>(pos), m);
        const int muv = vs.mu(j, static_cast<int>(pos), m);
        add_row(model, RowClass::McCormickOmega, RowSense::LessEqual, 0.0,
                {{ov, 1.0}, {vs.gamma(j, m), -ub(j, m)}});
        add_row(model, RowClass::McCormickOmega, RowSense::LessEqual, 0.0,
                {{ov, 1.0}, {muv, -1.0}});
        add_row(model, RowClass::McCormickOmega, RowSense::LessEqual, ub(j, m),
                {{muv, 1.0}, {ov, -1.0}, {vs.gamma(j, m), ub(j, m)}});
      }
    }
  }

  model.core_rows.resize(model.rows.size());
  for (int r = 0; r < static_cast<int>(model.rows.size()); ++r) {
    model.core_rows[r] = r;
    const RowClass cls = model.rows[r].cls;
    if (cls == RowClass::Fortet || cls == RowClass::McCormickTau) model.lazy_pool.push_back(r);
  }

  // -- cut pools -----------------------------------------------------------------
  for (int j = 0; j < nj; ++j) {
    for (int m = 1; m <= m_max; ++m) {
      if (ub(j, m) <= 0.0) continue;
      const int rid = add_row(model, RowClass::VI3, RowSense::GreaterEqual, 0.0,
                              {{vs.gamma(j, 1), ub(j, m)},
                               {vs.gamma(j, 2), ub(j, m)},
                               {vs.u(j, m), -1.0}});
      model.usercut_pool.push_back(rid);
    }
  }
  for (int j = 0; j < nj; ++j) {
    const int rid = add_row(model, RowClass::VI4, RowSense::GreaterEqual, 0.0,
                            {{vs.u(j, 1), 1.0}, {vs.u(j, 2), -1.0}});
    model.usercut_pool.push_back(rid);
  }
  for (int j = 0; j < nj; ++j) {
    const int rid = add_row(model, RowClass::VI5, RowSense::Equal, 0.0,
                            {{vs.gamma(j, 1), 1.0}, {vs.gamma(j, 2), 1.0}, {vs.x(j), -1.0}});
    model.vi5_rows.push_back(rid);
  }

  return model;
}

}  // namespace dronenet
