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
#include <random>

#include "dronenet/lp.hpp"
#include "support/reference_simplex.hpp"

using namespace dronenet;

namespace {

LpRow make_row(std::vector<std::pair<int, double>> terms, RowSense sense, double rhs) {
  LpRow r;
  r.terms = std::move(terms);
  r.sense = sense;
  r.rhs = rhs;
  return r;
}

}  // namespace

TEST_CASE("one-variable lower-bounded minimum") {
  const auto sol = solve_lp({make_row({{0, 1.0}}, RowSense::GreaterEqual, 3.0)}, {0.0}, {10.0},
                            {1.0});
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(sol.x[0] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("degenerate redundant equalities terminate") {
  std::vector<LpRow> rows;
  rows.push_back(make_row({{0, 1.0}, {1, 1.0}}, RowSense::Equal, 1.0));
  rows.push_back(make_row({{0, 2.0}, {1, 2.0}}, RowSense::Equal, 2.0));
  rows.push_back(make_row({{0, 1.0}, {1, 1.0}}, RowSense::LessEqual, 1.0));
  rows.push_back(make_row({{0, 1.0}}, RowSense::GreaterEqual, 0.0));
  const auto sol = solve_lp(rows, {0.0, 0.0}, {5.0, 5.0}, {1.0, 2.0});
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("infeasible box-row conflict is detected") {
  const auto sol =
      solve_lp({make_row({{0, 1.0}, {1, 1.0}}, RowSense::GreaterEqual, 5.0)}, {0.0, 0.0},
               {1.0, 1.0}, {1.0, 1.0});
  CHECK(sol.status == LpStatus::Infeasible);
}

TEST_CASE("random LPs agree with the dense tableau oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> sense_pick(0, 5);
  int optimal_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 40;
    const int m = 20;
    std::vector<double> lower(n), upper(n), cost(n);
    for (int v = 0; v < n; ++v) {
      lower[v] = -2.0 + u(rng);
      upper[v] = lower[v] + 1.0 + std::fabs(u(rng)) * 3.0;
      cost[v] = u(rng) * 5.0;
    }
    std::vector<LpRow> rows;
    for (int i = 0; i < m; ++i) {
      LpRow r;
      for (int v = 0; v < n; ++v) {
        if (std::fabs(u(rng)) < 0.35) r.terms.emplace_back(v, u(rng) * 4.0);
      }
      if (r.terms.empty()) r.terms.emplace_back(i % n, 1.0);
      const int s = sense_pick(rng);
      r.sense = s < 3 ? RowSense::LessEqual : s < 5 ? RowSense::GreaterEqual : RowSense::Equal;
      r.rhs = u(rng) * 2.0;
      rows.push_back(std::move(r));
    }
    const auto mine = solve_lp(rows, lower, upper, cost);
    testing::ReferenceSimplex ref;
    const auto ref_status = ref.solve(rows, lower, upper, cost);
    REQUIRE(mine.status == ref_status);
    if (mine.status == LpStatus::Optimal) {
      ++optimal_seen;
      CHECK(mine.objective ==
            doctest::Approx(ref.objective()).epsilon(1e-8).scale(1.0 + std::fabs(ref.objective())));
    }
  }
  CHECK(optimal_seen > 10);  // the generator must exercise the optimal path
}

TEST_CASE("warm re-solves after bound changes match cold solves") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 12;
  std::vector<double> lower(n, 0.0), upper(n, 1.0), cost(n);
  for (int v = 0; v < n; ++v) cost[v] = u(rng);
  std::vector<LpRow> rows;
  for (int i = 0; i < 8; ++i) {
    LpRow r;
    for (int v = 0; v < n; ++v) {
      if (std::fabs(u(rng)) < 0.5) r.terms.emplace_back(v, u(rng));
    }
    if (r.terms.empty()) r.terms.emplace_back(0, 1.0);
    r.sense = RowSense::LessEqual;
    r.rhs = 0.5 + std::fabs(u(rng));
    rows.push_back(std::move(r));
  }
  IncrementalLp warm(lower, upper, cost);
  for (const auto& r : rows) warm.add_row(r);
  REQUIRE(warm.solve().status == LpStatus::Optimal);

  std::uniform_int_distribution<int> var_pick(0, n - 1);
  for (int step = 0; step < 25; ++step) {
    std::vector<std::pair<int, double>> fixings;
    const int k = step % 4;
    for (int f = 0; f < k; ++f) fixings.emplace_back(var_pick(rng), (step + f) % 2 ? 1.0 : 0.0);
    warm.set_node_bounds(fixings);
    const auto a = warm.solve();
    const auto b = solve_lp(rows, lower, upper, cost, fixings);
    REQUIRE(a.status == b.status);
    if (a.status == LpStatus::Optimal) {
      CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("rows appended mid-run keep the engine consistent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 10;
  std::vector<double> lower(n, 0.0), upper(n, 2.0), cost(n);
  for (int v = 0; v < n; ++v) cost[v] = -1.0 + u(rng);
  std::vector<LpRow> rows;
  auto random_row = [&] {
    LpRow r;
    for (int v = 0; v < n; ++v) {
      if (std::fabs(u(rng)) < 0.4) r.terms.emplace_back(v, u(rng) * 2.0);
    }
    if (r.terms.empty()) r.terms.emplace_back(0, 1.0);
    r.sense = RowSense::LessEqual;
    r.rhs = 1.0 + std::fabs(u(rng));
    return r;
  };
  for (int i = 0; i < 5; ++i) rows.push_back(random_row());
  IncrementalLp warm(lower, upper, cost);
  for (const auto& r : rows) warm.add_row(r);
  REQUIRE(warm.solve().status == LpStatus::Optimal);
  for (int step = 0; step < 15; ++step) {
    rows.push_back(random_row());
    warm.add_row(rows.back());
    const auto a = warm.solve();
    const auto b = solve_lp(rows, lower, upper, cost);
    REQUIRE(a.status == b.status);
    if (a.status == LpStatus::Optimal) {
      CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-8).scale(1.0));
    }
  }
}
