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

#include "dronenet/instance.hpp"

#include <algorithm>
#include <set>

#include "dronenet/errors.hpp"

namespace dronenet {

double Instance::load_cap(int k) const {
  const double per_server = std::min(params_.rho_cap, 1.0 - params_.epsilon_ss);
  return static_cast<double>(k) * per_server;
}

Instance Instance::build(std::vector<DemandPoint> demands,
                         std::vector<CandidateBase> bases, InstanceParams params) {
  if (demands.empty()) throw InvalidParam("no demand points");
  if (bases.empty()) throw InvalidParam("no candidate bases");
  if (!(params.v > 0.0)) throw InvalidParam("drone speed must be positive");
  if (!(params.beta > 0.0)) throw InvalidParam("beta must be positive");
  if (!(params.r > 0.0)) throw InvalidParam("catchment radius must be positive");
  if (params.p <= 0) throw InvalidParam("fleet size p must be positive");
  if (params.q <= 0) throw InvalidParam("base budget q must be positive");
  if (params.M < 1) throw InvalidParam("max drones per base M must be >= 1");
  if (params.q > static_cast<int>(bases.size()))
    throw InvalidParam("base budget q exceeds number of candidate bases");
  if (params.p < params.q) throw InvalidParam("fleet size p must be >= base budget q");
  if (!(params.epsilon_ss > 0.0) || params.epsilon_ss >= 1.0)
    throw InvalidParam("epsilon_ss must lie in (0, 1)");
  if (!(params.rho_cap > 0.0) || params.rho_cap >= 1.0)
    throw InvalidParam("rho_cap must lie in (0, 1)");

  for (const auto& d : demands) {
    if (!(d.lambda > 0.0)) throw InvalidParam("demand lambda must be positive");
    if (!(d.xi_mean > 0.0)) throw InvalidParam("demand xi_mean must be positive");
    if (d.xi_second_moment < d.xi_mean * d.xi_mean)
      throw InvalidParam("xi second moment below squared mean");
  }
  {
    std::set<int> ids;
    for (const auto& b : bases) {
      if (!ids.insert(b.id).second) throw InvalidParam("duplicate base id");
    }
  }

  Instance inst;
  inst.demands_ = std::move(demands);
  inst.bases_ = std::move(bases);
  inst.params_ = params;

  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  inst.dist_.resize(static_cast<std::size_t>(ni) * nj);
  inst.bases_covering_.assign(ni, {});
  inst.demands_in_catchment_.assign(nj, {});

  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < nj; ++j) {
      const double d =
          ecef_distance(inst.demands_[i].location.ecef, inst.bases_[j].location.ecef);
      inst.dist_[static_cast<std::size_t>(i) * nj + j] = d;
      if (d <= params.r) {
        inst.bases_covering_[i].push_back(j);
        inst.demands_in_catchment_[j].push_back(i);
      }
    }
    if (inst.bases_covering_[i].empty()) throw UncoverableDemand(i);
    inst.total_lambda_ += inst.demands_[i].lambda;
  }
  return inst;
}

}  // namespace dronenet
