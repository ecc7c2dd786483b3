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
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "dronenet/errors.hpp"
#include "dronenet/milp.hpp"

namespace dronenet {

namespace {

using MonomialMap = std::map<std::uint64_t, double>;  // catchment-position bitmask -> coef

int add_var(LinearizedModel& model, double lo, double hi, bool integral, std::string name) {
  model.var_info.push_back(ModelVar{lo, hi, integral, std::move(name)});
  return static_cast<int>(model.var_info.size()) - 1;
}

int add_row(LinearizedModel& model, RowClass cls, RowSense sense, double rhs,
            std::vector<std::pair<int, double>> terms) {
  std::sort(terms.begin(), terms.end());
  LpRow row;
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

// One multiplication by the load polynomial sum_l w_l y_l, with the binary
// idempotence y^2 = y collapsing repeated indices into the same bitmask.
MonomialMap multiply_by_load(const MonomialMap& poly, const std::vector<double>& weights) {
  MonomialMap out;
  for (const auto& [mask, coef] : poly) {
    for (std::size_t pos = 0; pos < weights.size(); ++pos) {
      out[mask | (std::uint64_t{1} << pos)] += coef * weights[pos];
    }
  }
  return out;
}

struct ProductVars {
  // Registered product variables per (j, m): V * prod(y) and gamma * prod(y).
  std::map<std::uint64_t, int> with_v;
  std::map<std::uint64_t, int> with_gamma;
};

}  // namespace

LinearizedModel linearize_general(const Instance& inst, const ServiceMoments& moments, int levels,
                                  std::ostream* complexity_warning) {
  if (levels < 1) throw InvalidParam("general linearization requires M >= 1");
  if (levels != inst.params().M) {
    throw InvalidParam("requested level count differs from the instance M");
  }
  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  for (int j = 0; j < nj; ++j) {
    if (inst.demands_in_catchment(j).size() > 63) {
      throw InvalidParam("general linearization limited to catchments of at most 63 demands");
    }
  }
  if (levels > 4 && complexity_warning != nullptr) {
    double est = 0.0;
    for (int j = 0; j < nj; ++j) {
      const double n = static_cast<double>(inst.demands_in_catchment(j).size());
      double subsets = 1.0;
      for (int s = 1; s <= levels; ++s) subsets *= (n + 1.0);
      est += 2.0 * subsets * (levels + 3.0);
    }
    *complexity_warning << "warning: product expansion may emit on the order of " << est
                        << " rows for M = " << levels << "\n";
  }

  LinearizedModel model;
  model.kind = LinearizedModel::Kind::GeneralM;
  model.instance = &inst;
  model.moments = moments;
  model.u_bound = compute_u_bounds(inst, moments, inst.params().rho_cap);

  auto vbar = [&](int j, int m) {
    return 0.5 * model.u_bound[static_cast<std::size_t>(j) * levels + m - 1];
  };

  // -- shared binary block ----------------------------------------------------
  model.x_index.resize(nj);
  for (int j = 0; j < nj; ++j) {
    model.x_index[j] = add_var(model, 0, 1, true, "x_" + std::to_string(j));
  }
  model.y_index.assign(static_cast<std::size_t>(ni) * nj, -1);
  for (int i = 0; i < ni; ++i) {
    for (int j : inst.bases_covering(i)) {
      model.y_index[static_cast<std::size_t>(i) * nj + j] =
          add_var(model, 0, 1, true, "y_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  model.gamma_index.resize(static_cast<std::size_t>(nj) * levels);
  for (int j = 0; j < nj; ++j) {
    for (int m = 1; m <= levels; ++m) {
      model.gamma_index[static_cast<std::size_t>(j) * levels + m - 1] =
          add_var(model, 0, 1, true, "gamma_" + std::to_string(j) + "_" + std::to_string(m));
    }
  }
  std::vector<int> v_index(static_cast<std::size_t>(nj) * levels);
  for (int j = 0; j < nj; ++j) {
    for (int m = 1; m <= levels; ++m) {
      v_index[static_cast<std::size_t>(j) * levels + m - 1] = add_var(
          model, 0, vbar(j, m), false, "V_" + std::to_string(j) + "_" + std::to_string(m));
    }
  }

  // -- structural rows ----------------------------------------------------------
  for (int i = 0; i < ni; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int j : inst.bases_covering(i)) {
      terms.emplace_back(model.y_index[static_cast<std::size_t>(i) * nj + j], 1.0);
    }
    add_row(model, RowClass::Structural, RowSense::Equal, 1.0, std::move(terms));
  }
  for (int i = 0; i < ni; ++i) {
    for (int j : inst.bases_covering(i)) {
      add_row(model, RowClass::Structural, RowSense::LessEqual, 0.0,
              {{model.y_index[static_cast<std::size_t>(i) * nj + j], 1.0},
               {model.x_index[j], -1.0}});
    }
  }
  {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < nj; ++j) terms.emplace_back(model.x_index[j], 1.0);
    add_row(model, RowClass::Structural, RowSense::LessEqual, inst.params().q, std::move(terms));
  }
  GammaVarRefs refs{&model.x_index, &model.y_index, &model.gamma_index};
  for (auto& mr : gamma_expand(inst, moments, refs)) model.rows.push_back(std::move(mr));

  // -- per (base, level) defining rows over expanded monomials -------------------
  std::vector<std::vector<ProductVars>> products(nj, std::vector<ProductVars>(levels));
  struct PendingEnvelope {
    int var;
    int j;
    int m;
    std::uint64_t mask;
    bool with_v;
  };
  std::vector<PendingEnvelope> envelopes;

  auto product_with_v = [&](int j, int m, std::uint64_t mask) {
    auto& reg = products[j][m - 1].with_v;
    auto it = reg.find(mask);
    if (it != reg.end()) return it->second;
    const int var = add_var(model, 0, vbar(j, m), false,
                            "vp_" + std::to_string(j) + "_" + std::to_string(m) + "_" +
                                std::to_string(mask));
    reg.emplace(mask, var);
    envelopes.push_back(PendingEnvelope{var, j, m, mask, true});
    return var;
  };
  auto product_with_gamma = [&](int j, int m, std::uint64_t mask) {
    auto& reg = products[j][m - 1].with_gamma;
    auto it = reg.find(mask);
    if (it != reg.end()) return it->second;
    const int var = add_var(model, 0, 1, false,
                            "bp_" + std::to_string(j) + "_" + std::to_string(m) + "_" +
                                std::to_string(mask));
    reg.emplace(mask, var);
    envelopes.push_back(PendingEnvelope{var, j, m, mask, false});
    return var;
  };

  for (int j = 0; j < nj; ++j) {
    const auto& cat = inst.demands_in_catchment(j);
    std::vector<double> load_w(cat.size()), numer_w(cat.size());
    for (std::size_t pos = 0; pos < cat.size(); ++pos) {
      const double lam = inst.demands()[cat[pos]].lambda;
      load_w[pos] = lam * moments.mean_at(cat[pos], j);
      numer_w[pos] = lam * moments.second_at(cat[pos], j);
    }
    for (int m = 1; m <= levels; ++m) {
      // Denominator polynomial in the offered load: d_0 + ... + d_m L^m with
      // d_k = m*a_k - a_{k-1}, a_n = (m-n)(m-1)!/n!; the level-m delay
      // variable satisfies V * D(L) = (1/2) gamma * numerator * L^(m-1).
      std::vector<double> a(m), d(m + 1);
      double mm1fact = 1.0;
      for (int t = 2; t <= m - 1; ++t) mm1fact *= t;
      double nfact = 1.0;  // a_n = (m-n) * (m-1)! / n!
      for (int n = 0; n <= m - 1; ++n) {
        if (n >= 2) nfact *= n;
        a[n] = (m - n) * mm1fact / nfact;
      }
      d[0] = m * a[0];
      for (int k = 1; k <= m - 1; ++k) d[k] = m * a[k] - a[k - 1];
      d[m] = -a[m - 1];

      std::vector<std::pair<int, double>> terms;
      terms.emplace_back(v_index[static_cast<std::size_t>(j) * levels + m - 1], d[0]);

      MonomialMap power{{0, 1.0}};  // L^0
      for (int k = 1; k <= m; ++k) {
        power = multiply_by_load(power, load_w);
        if (d[k] == 0.0) continue;
        for (const auto& [mask, coef] : power) {
          terms.emplace_back(product_with_v(j, m, mask), d[k] * coef);
        }
      }
      // Right side: (1/2) gamma * numerator * L^(m-1).
      MonomialMap rhs_poly;
      for (std::size_t pos = 0; pos < cat.size(); ++pos) {
        rhs_poly[std::uint64_t{1} << pos] = numer_w[pos];
      }
      for (int k = 1; k <= m - 1; ++k) rhs_poly = multiply_by_load(rhs_poly, load_w);
      for (const auto& [mask, coef] : rhs_poly) {
        terms.emplace_back(product_with_gamma(j, m, mask), -0.5 * coef);
      }
      add_row(model, RowClass::UDef, RowSense::Equal, 0.0, std::move(terms));
    }
  }

  // -- objective ------------------------------------------------------------------
  // Product variables for the per-demand delay terms may still be created
  // here, so grow the cost vector on demand.
  auto add_obj = [&model](int var, double val) {
    if (var >= static_cast<int>(model.objective.size())) {
      model.objective.resize(model.var_info.size(), 0.0);
    }
    model.objective[var] += val;
  };
  const double total_lambda = inst.total_lambda();
  std::vector<std::vector<int>> pos_in_catchment(nj);
  for (int j = 0; j < nj; ++j) {
    const auto& cat = inst.demands_in_catchment(j);
    pos_in_catchment[j].assign(ni, -1);
    for (std::size_t pos = 0; pos < cat.size(); ++pos) pos_in_catchment[j][cat[pos]] = static_cast<int>(pos);
  }
  for (int i = 0; i < ni; ++i) {
    const double wi = inst.demands()[i].lambda / total_lambda;
    for (int j : inst.bases_covering(i)) {
      add_obj(model.y_index[static_cast<std::size_t>(i) * nj + j],
              wi * inst.distance(i, j) / inst.params().v);
      const std::uint64_t mask = std::uint64_t{1} << pos_in_catchment[j][i];
      for (int m = 1; m <= levels; ++m) {
        add_obj(product_with_v(j, m, mask), wi);
      }
    }
  }
  model.objective.resize(model.var_info.size(), 0.0);

  // -- product envelopes, in registration order --------------------------------------
  for (const auto& pe : envelopes) {
    const auto& cat = inst.demands_in_catchment(pe.j);
    std::vector<int> members;
    for (std::size_t pos = 0; pos < cat.size(); ++pos) {
      if (pe.mask & (std::uint64_t{1} << pos)) {
        members.push_back(model.y_index[static_cast<std::size_t>(cat[pos]) * nj + pe.j]);
      }
    }
    if (!pe.with_v) {
      members.push_back(model.gamma_index[static_cast<std::size_t>(pe.j) * levels + pe.m - 1]);
    }
    if (pe.with_v) {
      const int v = v_index[static_cast<std::size_t>(pe.j) * levels + pe.m - 1];
      const double bound = vbar(pe.j, pe.m);
      for (int b : members) {
        add_row(model, RowClass::Product, RowSense::LessEqual, 0.0,
                {{pe.var, 1.0}, {b, -bound}});
      }
      add_row(model, RowClass::Product, RowSense::LessEqual, 0.0, {{pe.var, 1.0}, {v, -1.0}});
      std::vector<std::pair<int, double>> lo{{pe.var, 1.0}, {v, -1.0}};
      for (int b : members) lo.emplace_back(b, -bound);
      add_row(model, RowClass::Product, RowSense::GreaterEqual,
              -bound * static_cast<double>(members.size()), std::move(lo));
    } else {
      for (int b : members) {
        add_row(model, RowClass::Product, RowSense::LessEqual, 0.0, {{pe.var, 1.0}, {b, -1.0}});
      }
      std::vector<std::pair<int, double>> lo{{pe.var, 1.0}};
      for (int b : members) lo.emplace_back(b, -1.0);
      add_row(model, RowClass::Product, RowSense::GreaterEqual,
              -static_cast<double>(members.size()) + 1.0, std::move(lo));
    }
  }

  model.core_rows.resize(model.rows.size());
  for (int r = 0; r < static_cast<int>(model.rows.size()); ++r) model.core_rows[r] = r;
  return model;
}

}  // namespace dronenet
