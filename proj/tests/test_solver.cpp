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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "dronenet/enumeration.hpp"
#include "dronenet/errors.hpp"
#include "dronenet/milp.hpp"
#include "dronenet/queueing.hpp"
#include "dronenet/solver.hpp"
#include "support/model_point.hpp"
#include "support/test_instances.hpp"

using namespace dronenet;

namespace {

SolveParams tight_params() {
  SolveParams p;
  p.gap_tolerance = 1e-9;
  p.time_limit_s = 120.0;
  return p;
}

// Demands handed to exactly one base each: two distant clusters.
Instance forced_assignment_instance(int p, int q) {
  std::vector<CandidateBase> bases(2);
  bases[0].id = 0;
  bases[0].location = make_geo_point(38.9, -77.1);
  bases[1].id = 1;
  bases[1].location = make_geo_point(38.9, -76.4);  // ~60 km east
  std::vector<DemandPoint> demands;
  for (int i = 0; i < 4; ++i) {
    DemandPoint d;
    d.id = i;
    const int cluster = i % 2;
    d.location = make_geo_point(38.9 + 0.01 * (i / 2), cluster == 0 ? -77.1 : -76.4);
    d.lambda = 2e-4 + 1e-4 * i;
    d.xi_mean = 900.0 + 200.0 * i;
    d.xi_second_moment = d.xi_mean * d.xi_mean * 1.5;
    demands.push_back(d);
  }
  InstanceParams params;
  params.r = 10000.0;
  params.p = p;
  params.q = q;
  params.M = 2;
  return Instance::build(std::move(demands), std::move(bases), params);
}

}  // namespace

TEST_CASE("all three modes match the enumeration oracle on tiny instances") {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    testing::RandomInstanceSpec spec;
    spec.seed = seed * 13 + 1;
    spec.num_demands = 6;
    spec.num_bases = 3;
    spec.p = 2 + static_cast<int>(seed % 2);
    spec.q = 2;
    spec.load_scale = 0.45 + 0.1 * (seed % 3);
    const auto inst = testing::make_random_instance(spec);
    const auto sm = service_moments(inst);
    const auto model = linearize_m2(inst, sm);

    EnumerationResult oracle;
    bool feasible = true;
    try {
      oracle = enumerate_optimum(inst);
    } catch (const NoFeasibleDesign&) {
      feasible = false;
    }
    for (SolveMode mode : {SolveMode::REFO, SolveMode::OA, SolveMode::OA_BC}) {
      CAPTURE(seed);
      CAPTURE(to_string(mode));
      const auto report = solve(model, mode, tight_params());
      if (!feasible) {
        CHECK(report.status == SolveStatus::Infeasible);
        continue;
      }
      REQUIRE(report.status == SolveStatus::Optimal);
      CHECK(report.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
      CHECK(report.gap <= 1e-6);
      CHECK(report.lower_bound <= report.objective + 1e-9);
      CHECK(check_feasible(inst, report.incumbent).empty());
      ++solved;
    }
  }
  CHECK(solved >= 18);
}

TEST_CASE("forced assignments reduce the search to capacity splits") {
  const auto inst = forced_assignment_instance(3, 2);
  const auto sm = service_moments(inst);
  const auto model = linearize_m2(inst, sm);
  const auto report = solve(model, SolveMode::OA_BC, tight_params());
  REQUIRE(report.status == SolveStatus::Optimal);

  // Direct evaluation over the admissible splits (K in {(1,2), (2,1)}).
  double best = std::numeric_limits<double>::infinity();
  for (const auto& split : {std::vector<int>{1, 2}, std::vector<int>{2, 1}}) {
    std::vector<int> assigned(inst.num_demands());
    for (int i = 0; i < inst.num_demands(); ++i) assigned[i] = inst.bases_covering(i)[0];
    const auto design = Design::from_counts(inst, split, assigned);
    if (!check_feasible(inst, design).empty()) continue;
    best = std::min(best, average_response(inst, sm, design).avg_resp);
  }
  CHECK(report.objective == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("coverage beyond the fleet size is infeasible") {
  // Three isolated clusters need three open bases; only p = 2 drones exist.
  std::vector<CandidateBase> bases(3);
  std::vector<DemandPoint> demands(3);
  const double lons[3] = {-77.1, -76.4, -75.7};
  for (int k = 0; k < 3; ++k) {
    bases[k].id = k;
    bases[k].location = make_geo_point(38.9, lons[k]);
    demands[k].id = k;
    demands[k].location = bases[k].location;
    demands[k].lambda = 1e-4;
    demands[k].xi_mean = 1000.0;
    demands[k].xi_second_moment = 1e6;
  }
  InstanceParams params;
  params.r = 10000.0;
  params.p = 2;
  params.q = 2;
  params.M = 2;
  const auto inst = Instance::build(std::move(demands), std::move(bases), params);
  const auto sm = service_moments(inst);
  const auto model = linearize_m2(inst, sm);
  const auto report = solve(model, SolveMode::OA_BC, tight_params());
  CHECK(report.status == SolveStatus::Infeasible);
  CHECK_THROWS_AS(enumerate_optimum(inst), NoFeasibleDesign);
}

TEST_CASE("lazy separation matches a brute-force row scan") {
  testing::RandomInstanceSpec spec;
  spec.seed = 31;
  spec.num_demands = 6;
  spec.num_bases = 3;
  spec.p = 3;
  spec.q = 2;
  const auto inst = testing::make_random_instance(spec);
  const auto sm = service_moments(inst);
  const auto model = linearize_m2(inst, sm);
  const auto oracle = enumerate_optimum(inst);
  auto point = testing::integer_point_from_design(model, oracle.best);

  SUBCASE("consistent point has no violations") {
    CHECK(separate_lazy(model, point, model.lazy_pool).empty());
  }
  SUBCASE("zeroing a pair variable violates its lower envelope") {
    int pair_var = -1;
    for (int j = 0; j < inst.num_bases() && pair_var < 0; ++j) {
      for (std::size_t pr = 0; pr < model.vars.pairs(j).size(); ++pr) {
        const int zv = model.vars.z(j, static_cast<int>(pr));
        if (point[zv] > 0.5) {
          pair_var = zv;
          break;
        }
      }
    }
    if (pair_var >= 0) {
      point[pair_var] = 0.0;
      const auto violated = separate_lazy(model, point, model.lazy_pool);
      CHECK(!violated.empty());
      // independent full scan
      std::vector<int> expect;
      for (int rid : model.lazy_pool) {
        const auto& row = model.rows[rid].row;
        double act = 0.0;
        for (const auto& [var, coef] : row.terms) act += coef * point[var];
        const bool bad = row.sense == RowSense::LessEqual      ? act > row.rhs + 1e-7
                         : row.sense == RowSense::GreaterEqual ? act < row.rhs - 1e-7
                                                               : std::fabs(act - row.rhs) > 1e-7;
        if (bad) expect.push_back(rid);
      }
      CHECK(violated == expect);
    }
  }
}

TEST_CASE("user cut separation flags the stated patterns") {
  const auto inst = testing::make_colocated_instance(5e-4, 1000.0, 1e6, 1, 2);
  const auto sm = service_moments(inst);
  const auto model = linearize_m2(inst, sm);
  std::vector<double> point(model.var_info.size(), 0.0);

  SUBCASE("activation cut: positive delay variable with no drones") {
    point[model.vars.u(0, 1)] = 0.5 * model.u_bound[0];
    const auto violated = separate_usercuts(model, point, model.usercut_pool);
    REQUIRE(!violated.empty());
    CHECK(model.rows[violated[0]].cls == RowClass::VI3);
  }
  SUBCASE("monotonicity cut: level-2 above level-1") {
    point[model.vars.gamma(0, 2)] = 1.0;
    point[model.vars.u(0, 2)] = 0.5 * model.u_bound[1];
    point[model.vars.u(0, 1)] = 0.0;
    const auto violated = separate_usercuts(model, point, model.usercut_pool);
    REQUIRE(!violated.empty());
    bool saw_vi4 = false;
    for (int rid : violated) saw_vi4 |= model.rows[rid].cls == RowClass::VI4;
    CHECK(saw_vi4);
  }
  SUBCASE("integer-feasible points violate nothing") {
    const auto design = Design::from_counts(inst, {1}, {0});
    const auto full = testing::integer_point_from_design(model, design);
    CHECK(separate_usercuts(model, full, model.usercut_pool).empty());
  }
}

TEST_CASE("branching picks the most fractional binary with lowest-index ties") {
  const auto inst = testing::make_colocated_instance(5e-4, 1000.0, 1e6, 1, 2);
  const auto sm = service_moments(inst);
  const auto model = linearize_m2(inst, sm);
  std::vector<double> point(model.var_info.size(), 0.0);
  point[model.vars.x(0)] = 0.4;
  point[model.vars.y(0, 0)] = 0.5;
  CHECK(branch_variable(model, point) == model.vars.y(0, 0));
  point[model.vars.x(0)] = 0.5;  // tie at 0.5: lowest index wins
  CHECK(branch_variable(model, point) == model.vars.x(0));
  std::fill(point.begin(), point.end(), 0.0);
  point[model.vars.x(0)] = 1.0;
  CHECK_THROWS_AS(branch_variable(model, point), NoFractionalVar);
}

TEST_CASE("cut toggles never change the optimum") {
  for (std::uint64_t seed : {3ull, 9ull, 21ull}) {
    testing::RandomInstanceSpec spec;
    spec.seed = seed;
    spec.num_demands = 6;
    spec.num_bases = 3;
    spec.p = 3;
    spec.q = 2;
    spec.load_scale = 0.55;
    const auto inst = testing::make_random_instance(spec);
    const auto sm = service_moments(inst);
    const auto model = linearize_m2(inst, sm);
    double reference = -1.0;
    for (const bool cuts : {false, true}) {
      SolveParams params = tight_params();
      params.enable_usercuts = cuts;
      params.enable_vi5 = cuts;
      const auto report = solve(model, SolveMode::OA, params);
      if (report.status == SolveStatus::Infeasible) {
        reference = -2.0;
        continue;
      }
      REQUIRE(report.status == SolveStatus::Optimal);
      if (reference < 0) {
        reference = report.objective;
      } else {
        CHECK(report.objective == doctest::Approx(reference).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("identical runs give identical reports") {
  testing::RandomInstanceSpec spec;
  spec.seed = 17;
  spec.num_demands = 6;
  spec.num_bases = 3;
  spec.p = 3;
  spec.q = 2;
  spec.load_scale = 0.6;
  const auto inst = testing::make_random_instance(spec);
  const auto sm = service_moments(inst);
  const auto model = linearize_m2(inst, sm);
  const auto a = solve(model, SolveMode::OA_BC, tight_params());
  const auto b = solve(model, SolveMode::OA_BC, tight_params());
  CHECK(a.status == b.status);
  CHECK(a.nodes == b.nodes);
  CHECK(a.lazy_reinstated == b.lazy_reinstated);
  CHECK(a.user_cuts_applied == b.user_cuts_applied);
  if (a.status == SolveStatus::Optimal) {
    CHECK(a.objective == b.objective);
    CHECK(a.incumbent == b.incumbent);
  }
}

TEST_CASE("the final incumbent satisfies the entire constraint set") {
  testing::RandomInstanceSpec spec;
  spec.seed = 23;
  spec.num_demands = 7;
  spec.num_bases = 3;
  spec.p = 3;
  spec.q = 2;
  spec.load_scale = 0.5;
  const auto inst = testing::make_random_instance(spec);
  const auto sm = service_moments(inst);
  const auto model = linearize_m2(inst, sm);
  const auto report = solve(model, SolveMode::OA, tight_params());
  REQUIRE(report.status == SolveStatus::Optimal);
  const auto point = testing::integer_point_from_design(model, report.incumbent);
  CHECK(testing::point_satisfies(model, point, model.core_rows));
  const auto qm = average_response(inst, sm, report.incumbent);
  CHECK(qm.avg_resp == doctest::Approx(report.objective).epsilon(1e-9));
}

TEST_CASE("general linearization agrees with the two-drone model and the oracle") {
  for (std::uint64_t seed : {2ull, 7ull}) {
    testing::RandomInstanceSpec spec;
    spec.seed = seed;
    spec.num_demands = 5;
    spec.num_bases = 3;
    spec.p = 3;
    spec.q = 2;
    spec.M = 2;
    spec.load_scale = 0.5;
    const auto inst = testing::make_random_instance(spec);
    const auto sm = service_moments(inst);
    EnumerationResult oracle;
    try {
      oracle = enumerate_optimum(inst);
    } catch (const NoFeasibleDesign&) {
      continue;
    }
    const auto m2 = linearize_m2(inst, sm);
    const auto gen = linearize_general(inst, sm, 2);
    const auto r2 = solve(m2, SolveMode::OA_BC, tight_params());
    const auto rg = solve(gen, SolveMode::REFO, tight_params());
    REQUIRE(r2.status == SolveStatus::Optimal);
    REQUIRE(rg.status == SolveStatus::Optimal);
    CHECK(r2.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
    CHECK(rg.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
    CHECK(rg.objective == doctest::Approx(r2.objective).epsilon(1e-6));
  }
}

TEST_CASE("single-level general model matches the oracle") {
  testing::RandomInstanceSpec spec;
  spec.seed = 4;
  spec.num_demands = 5;
  spec.num_bases = 3;
  spec.p = 2;
  spec.q = 2;
  spec.M = 1;
  spec.load_scale = 0.4;
  const auto inst = testing::make_random_instance(spec);
  const auto sm = service_moments(inst);
  const auto oracle = enumerate_optimum(inst);
  const auto gen = linearize_general(inst, sm, 1);
  const auto report = solve(gen, SolveMode::REFO, tight_params());
  REQUIRE(report.status == SolveStatus::Optimal);
  CHECK(report.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
}
