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

#ifndef DRONENET_SIMULATOR_HPP
#define DRONENET_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "dronenet/design.hpp"
#include "dronenet/instance.hpp"

namespace dronenet {

// Nearest dispatches any available in-range drone network-wide; the static
// policy only serves a demand from the base the design assigns it to.
enum class DispatchPolicy { Nearest, StaticAssignment };

struct SimConfig {
  DispatchPolicy policy = DispatchPolicy::Nearest;
  double takeoff_s = 10.0;
  double landing_s = 10.0;
  // Non-travel service time: drawn at its mean by default, exponential with
  // that mean for validation runs.
  bool exponential_service = false;
  std::uint64_t seed = 1;
};

struct SimRequest {
  double time_s = 0.0;
  int demand = 0;  // demand-point index carrying the location and moments
};

struct SimRequestOutcome {
  double arrival_s = 0.0;
  int demand = -1;
  int base = -1;
  int drone = -1;
  double wait_s = 0.0;
  double flight_s = 0.0;
  double response_s = 0.0;  // wait + takeoff + flight + landing
  bool served = false;
  bool unservable = false;
};

struct SimOutcome {
  std::vector<SimRequestOutcome> requests;
  std::int64_t served = 0;
  std::int64_t unservable = 0;
  std::int64_t queued_at_end = 0;
  double mean_response_s = 0.0;
  double median_response_s = 0.0;
  double max_response_s = 0.0;
  double mean_wait_s = 0.0;
  double mean_queue_len = 0.0;  // time average
  std::int64_t max_queue_len = 0;
};

// Event-driven dispatch simulation: availability events at equal timestamps
// precede arrivals, freed capacity first serves the oldest queued request
// coverable by an available drone, and a dispatched drone is busy for
// takeoff + flight out + on-scene/reset + flight back + landing.
SimOutcome simulate(const Instance& inst, const Design& design,
                    const std::vector<SimRequest>& arrivals, const SimConfig& config);

// Seeded Poisson streams per demand point over the horizon, merged in time.
std::vector<SimRequest> poisson_arrivals(const Instance& inst, double horizon_s,
                                         std::uint64_t seed);

struct BaseValidation {
  int base = -1;
  double sim_mean_wait_s = 0.0;
  double wait_se = 0.0;
  double analytic_wait_s = 0.0;
  std::int64_t served = 0;
};

struct ValidationRecord {
  std::vector<BaseValidation> bases;
  double sim_mean_response_s = 0.0;
  double response_se = 0.0;
  double analytic_mean_response_s = 0.0;
  std::int64_t served = 0;
};

// Long-horizon synthetic run under the static policy compared against the
// closed-form per-base delays and the network average response. Standard
// errors come from batch means over the service order.
ValidationRecord long_run_validate(const Instance& inst, const Design& design, double horizon_s,
                                   std::uint64_t seed, const SimConfig& config);

}  // namespace dronenet

#endif  // DRONENET_SIMULATOR_HPP
