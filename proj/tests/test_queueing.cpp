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

#include <random>

#include "dronenet/errors.hpp"
#include "dronenet/queueing.hpp"
#include "support/erlang.hpp"
#include "support/test_instances.hpp"

using namespace dronenet;

namespace {

Instance two_colocated_demands(double lam0, double xi0, double lam1, double xi1) {
  std::vector<CandidateBase> bases(1);
  bases[0].id = 0;
  bases[0].location = make_geo_point(38.9, -77.1);
  std::vector<DemandPoint> demands(2);
  for (int i = 0; i < 2; ++i) {
    demands[i].id = i;
    demands[i].location = bases[0].location;
  }
  demands[0].lambda = lam0;
  demands[0].xi_mean = xi0;
  demands[0].xi_second_moment = xi0 * xi0;
  demands[1].lambda = lam1;
  demands[1].xi_mean = xi1;
  demands[1].xi_second_moment = xi1 * xi1;
  InstanceParams params;
  params.r = 1000.0;
  params.p = 2;
  params.q = 1;
  params.M = 2;
  params.rho_cap = 0.999;
  return Instance::build(std::move(demands), std::move(bases), params);
}

}  // namespace

TEST_CASE("service moments follow the round-trip formula") {
  // Hand arithmetic of the derived example first: 1668 m at 27.8 m/s and
  // beta = 2 adds 120 s of travel to a 1500 s non-travel mean.
  CHECK(2.0 * 1668.0 / 27.8 + 1500.0 == doctest::Approx(1620.0).epsilon(1e-12));

  testing::RandomInstanceSpec spec;
  spec.seed = 3;
  const auto inst = testing::make_random_instance(spec);
  const auto sm = service_moments(inst);
  for (int i = 0; i < inst.num_demands(); ++i) {
    for (int j = 0; j < inst.num_bases(); ++j) {
      const double travel = inst.params().beta * inst.distance(i, j) / inst.params().v;
      const auto& d = inst.demands()[i];
      CHECK(sm.mean_at(i, j) ==
            doctest::Approx(travel + d.xi_mean).epsilon(1e-14));
      CHECK(sm.second_at(i, j) ==
            doctest::Approx(travel * travel + 2 * travel * d.xi_mean + d.xi_second_moment)
                .epsilon(1e-14));
      CHECK(sm.second_at(i, j) >= sm.mean_at(i, j) * sm.mean_at(i, j) - 1e-9);
    }
  }
}

TEST_CASE("zero travel reduces the service time to the non-travel part") {
  const auto inst = testing::make_colocated_instance(1e-4, 1500.0, 1500.0 * 1500.0, 1, 1);
  const auto sm = service_moments(inst);
  CHECK(sm.mean_at(0, 0) == 1500.0);
  CHECK(sm.second_at(0, 0) == 1500.0 * 1500.0);
}

TEST_CASE("base moments pool by arrival rate") {
  SUBCASE("singleton") {
    const auto inst = testing::make_colocated_instance(2e-4, 1000.0, 2e6, 1, 1);
    const auto sm = service_moments(inst);
    const auto design = Design::from_counts(inst, {1}, {0});
    const auto bm = base_moments(inst, sm, design, 0);
    CHECK(bm.eta == 2e-4);
    CHECK(bm.s_mean == 1000.0);
    CHECK(bm.s_second == 2e6);
  }
  SUBCASE("equal rates average symmetrically") {
    const auto inst = two_colocated_demands(1e-4, 100.0, 1e-4, 200.0);
    const auto sm = service_moments(inst);
    const auto design = Design::from_counts(inst, {1}, {0, 0});
    const auto bm = base_moments(inst, sm, design, 0);
    CHECK(bm.s_mean == doctest::Approx(150.0).epsilon(1e-12));
  }
  SUBCASE("rate-weighted mean") {
    const auto inst = two_colocated_demands(1e-4, 100.0, 3e-4, 200.0);
    const auto sm = service_moments(inst);
    const auto design = Design::from_counts(inst, {1}, {0, 0});
    const auto bm = base_moments(inst, sm, design, 0);
    CHECK(bm.s_mean == doctest::Approx(175.0).epsilon(1e-12));
  }
  SUBCASE("empty base throws") {
    const auto inst = two_colocated_demands(1e-4, 100.0, 1e-4, 200.0);
    const auto sm = service_moments(inst);
    Design design = Design::from_counts(inst, {1}, {0, 0});
    design.assigned_base = {-1, -1};
    CHECK_THROWS_AS(base_moments(inst, sm, design, 0), EmptyBase);
  }
}

TEST_CASE("delay formula reduces to Pollaczek-Khinchine at one server") {
  CHECK(mgk_delay(5e-4, 1000.0, 1e6, 1) == doctest::Approx(500.0).epsilon(1e-12));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double s_mean = 10.0 + 1000.0 * u(rng);
    const double rho = 0.02 + 0.96 * u(rng);
    const double eta = rho / s_mean;
    const double s2 = s_mean * s_mean * (1.0 + u(rng));
    const double pk = eta * s2 / (2.0 * (1.0 - rho));
    CHECK(mgk_delay(eta, s_mean, s2, 1) == doctest::Approx(pk).epsilon(1e-12));
  }
}

TEST_CASE("delay formula is exact Erlang-C for exponential service") {
  CHECK(mgk_delay(1.0, 1.0, 2.0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (int servers = 1; servers <= 6; ++servers) {
    for (int g = 1; g <= 50; ++g) {
      const double rho = servers * (g / 51.0);
      const double s_mean = 120.0;
      const double eta = rho / s_mean;
      const double expect = testing::erlang_c_wait(eta, s_mean, servers);
      CHECK(mgk_delay(eta, s_mean, 2.0 * s_mean * s_mean, servers) ==
            doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("delay edge cases") {
  CHECK(mgk_delay(0.0, 100.0, 1e4, 1) == 0.0);
  CHECK_THROWS_AS(mgk_delay(0.01, 100.0, 1e4, 1), UnstableQueue);
  CHECK_THROWS_AS(mgk_delay(0.03, 100.0, 1e4, 2), UnstableQueue);
  CHECK_THROWS_AS(mgk_delay(1e-4, 100.0, 1e4, 0), InvalidCapacity);
}

TEST_CASE("delay is monotone in capacity and scales with time units") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double s_mean = 50.0 + 500.0 * u(rng);
    const double rho = 0.05 + 0.9 * u(rng);
    const double eta = rho / s_mean;
    const double s2 = s_mean * s_mean * (1.0 + 1.5 * u(rng));
    double prev = mgk_delay(eta, s_mean, s2, 1);
    for (int servers = 2; servers <= 20; ++servers) {
      const double cur = mgk_delay(eta, s_mean, s2, servers);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
    const double c = 3.5;
    CHECK(mgk_delay(eta / c, s_mean * c, s2 * c * c, 3) ==
          doctest::Approx(c * mgk_delay(eta, s_mean, s2, 3)).epsilon(1e-11));
  }
}

TEST_CASE("delay blows up approaching saturation") {
  const double s_mean = 100.0;
  double prev = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double rho = 1.0 - std::pow(10.0, -k);
    const double eta = rho / s_mean;
    const double cur = mgk_delay(eta, s_mean, 2e4, 1);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(prev > 1e5);
}

TEST_CASE("average response composes delay and flight time") {
  SUBCASE("no congestion limit: response tends to flight time") {
    const auto inst = testing::make_colocated_instance(1e-9, 100.0, 1e4, 1, 1);
    const auto sm = service_moments(inst);
    const auto design = Design::from_counts(inst, {1}, {0});
    const auto qm = average_response(inst, sm, design);
    CHECK(qm.avg_resp == doctest::Approx(0.0).scale(1.0).epsilon(1e-4));
  }
  SUBCASE("M/M/2 with a colocated demand gives the Erlang-C value") {
    const auto inst = testing::make_colocated_instance(1.0, 1.0, 2.0, 2, 2);
    const auto sm = service_moments(inst);
    const auto design = Design::from_counts(inst, {2}, {0});
    const auto qm = average_response(inst, sm, design);
    CHECK(qm.avg_resp == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("symmetric demands share the common delay plus flight") {
    auto d0 = DemandPoint{};
    d0.id = 0;
    d0.location = make_geo_point(38.905, -77.1);
    d0.lambda = 1e-4;
    d0.xi_mean = 1000.0;
    d0.xi_second_moment = 1e6;
    auto d1 = d0;
    d1.id = 1;
    d1.location = make_geo_point(38.895, -77.1);
    CandidateBase b;
    b.id = 0;
    b.location = make_geo_point(38.9, -77.1);
    InstanceParams params;
    params.r = 5000.0;
    params.p = 1;
    params.q = 1;
    params.M = 1;
    const auto inst = Instance::build({d0, d1}, {b}, params);
    const auto sm = service_moments(inst);
    const auto design = Design::from_counts(inst, {1}, {0, 0});
    const auto qm = average_response(inst, sm, design);
    // symmetric up to the slight north/south asymmetry of the ellipsoid
    const double d01 = inst.distance(0, 0);
    CHECK(inst.distance(1, 0) == doctest::Approx(d01).epsilon(1e-4));
    CHECK(qm.avg_resp ==
          doctest::Approx(qm.wq[0] + d01 / inst.params().v).epsilon(1e-5));
    CHECK(qm.resp[0] >= d01 / inst.params().v);
  }
}
