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

#ifndef DRONENET_INSTANCE_HPP
#define DRONENET_INSTANCE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dronenet/geo.hpp"

namespace dronenet {

// One demand point. lambda is the request rate in arrivals per second;
// xi_mean / xi_second_moment are the first two moments of the non-travel
// part of the service time (on-scene plus reset), in seconds / seconds^2.
struct DemandPoint {
  int id = 0;
  GeoPoint location;
  double lambda = 0.0;
  double xi_mean = 0.0;
  double xi_second_moment = 0.0;
  // Retained for replay-mode simulation; empty for synthetic demands.
  std::optional<double> arrival_time_s;
  std::optional<double> historical_response_s;
};

struct CandidateBase {
  int id = 0;
  GeoPoint location;
};

struct InstanceParams {
  double v = 27.8;           // drone speed, m/s
  double beta = 2.0;         // round-trip travel coefficient
  double r = 0.0;            // catchment radius, meters
  int p = 0;                 // fleet size
  int q = 0;                 // max open bases
  int M = 2;                 // max drones per base
  double epsilon_ss = 1e-4;  // steady-state slack, utilization units
  double rho_cap = 0.95;     // per-server utilization cap (1 - delta)
};

// Immutable problem instance: demand points, candidate bases, the pairwise
// ECEF distance matrix and the catchment index sets. Safe to share across
// threads once built.
class Instance {
 public:
  static Instance build(std::vector<DemandPoint> demands,
                        std::vector<CandidateBase> bases, InstanceParams params);

  int num_demands() const { return static_cast<int>(demands_.size()); }
  int num_bases() const { return static_cast<int>(bases_.size()); }

  const std::vector<DemandPoint>& demands() const { return demands_; }
  const std::vector<CandidateBase>& bases() const { return bases_; }
  const InstanceParams& params() const { return params_; }

  double distance(int i, int j) const {
    return dist_[static_cast<std::size_t>(i) * bases_.size() + j];
  }

  // J_i: bases within radius of demand i (ascending base index).
  const std::vector<int>& bases_covering(int i) const { return bases_covering_[i]; }
  // I_j: demands within radius of base j (ascending demand index).
  const std::vector<int>& demands_in_catchment(int j) const { return demands_in_catchment_[j]; }

  bool covers(int i, int j) const { return distance(i, j) <= params_.r; }

  double total_lambda() const { return total_lambda_; }

  // Largest admissible offered load eta*E[S] for a base with k drones. The
  // steady-state inequality is realized as load <= k * min(rho_cap,
  // 1 - epsilon_ss) so that the enumeration oracle, the feasibility checker
  // and the linearized model all search the identical feasible set.
  double load_cap(int k) const;

 private:
  Instance() = default;

  std::vector<DemandPoint> demands_;
  std::vector<CandidateBase> bases_;
  InstanceParams params_;
  std::vector<double> dist_;  // |I| x |J|, row-major
  std::vector<std::vector<int>> bases_covering_;
  std::vector<std::vector<int>> demands_in_catchment_;
  double total_lambda_ = 0.0;
};

}  // namespace dronenet

#endif  // DRONENET_INSTANCE_HPP
