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

#include "support/test_instances.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

namespace dronenet::testing {

Instance make_random_instance(const RandomInstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lat0 = 38.9;
  const double lon0 = -77.1;

  std::vector<CandidateBase> bases(spec.num_bases);
  for (int j = 0; j < spec.num_bases; ++j) {
    bases[j].id = j;
    bases[j].location = make_geo_point(lat0 + spec.box_deg * (unit(rng) - 0.5),
                                       lon0 + spec.box_deg * (unit(rng) - 0.5));
  }
  std::vector<DemandPoint> demands(spec.num_demands);
  for (int i = 0; i < spec.num_demands; ++i) {
    demands[i].id = i;
    demands[i].location = make_geo_point(lat0 + spec.box_deg * (unit(rng) - 0.5),
                                         lon0 + spec.box_deg * (unit(rng) - 0.5));
    demands[i].xi_mean = 600.0 + 1800.0 * unit(rng);
    // Mix of deterministic, mildly dispersed, and exponential-like services.
    const double roll = unit(rng);
    const double m = demands[i].xi_mean;
    demands[i].xi_second_moment = roll < 0.4 ? m * m : roll < 0.7 ? 1.5 * m * m : 2.0 * m * m;
    demands[i].lambda = 0.5 + unit(rng);  // scaled below
  }

  // Radius: every demand coverable, catchments overlapping.
  double needed = 0.0;
  for (const auto& d : demands) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : bases) {
      nearest = std::min(nearest, ecef_distance(d.location.ecef, b.location.ecef));
    }
    needed = std::max(needed, nearest);
  }

  // Scale rates so the total non-travel load is the requested share of the
  // fleet capacity.
  double raw_load = 0.0;
  for (const auto& d : demands) raw_load += d.lambda * d.xi_mean;
  const double target = spec.load_scale * static_cast<double>(spec.p);
  for (auto& d : demands) d.lambda *= target / raw_load;

  InstanceParams params;
  params.v = 27.8;
  params.beta = 2.0;
  params.r = needed * spec.radius_slack + 1.0;
  params.p = spec.p;
  params.q = spec.q;
  params.M = spec.M;
  return Instance::build(std::move(demands), std::move(bases), params);
}

Instance make_colocated_instance(double lambda, double xi_mean, double xi_second, int drones,
                                 int max_per_base) {
  std::vector<CandidateBase> bases(1);
  bases[0].id = 0;
  bases[0].location = make_geo_point(38.9, -77.1);
  std::vector<DemandPoint> demands(1);
  demands[0].id = 0;
  demands[0].location = bases[0].location;
  demands[0].lambda = lambda;
  demands[0].xi_mean = xi_mean;
  demands[0].xi_second_moment = xi_second;
  InstanceParams params;
  params.v = 27.8;
  params.beta = 2.0;
  params.r = 1000.0;
  params.p = drones;
  params.q = 1;
  params.M = max_per_base;
  params.rho_cap = 0.999;
  params.epsilon_ss = 1e-6;
  return Instance::build(std::move(demands), std::move(bases), params);
}

}  // namespace dronenet::testing
