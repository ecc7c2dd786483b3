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

#ifndef DRONENET_QUEUEING_HPP
#define DRONENET_QUEUEING_HPP

#include <cstddef>
#include <vector>

#include "dronenet/design.hpp"
#include "dronenet/instance.hpp"

namespace dronenet {

// First two moments of the conditional service time S_ij: round-trip flight
// plus the non-travel component. Travel is deterministic, so
//   E[S_ij]   = beta * d_ij / v + E[xi_i]
//   E[S_ij^2] = (beta * d_ij / v)^2 + 2 * (beta * d_ij / v) * E[xi_i] + E[xi_i^2].
struct ServiceMoments {
  int num_demands = 0;
  int num_bases = 0;
  std::vector<double> mean;    // seconds
  std::vector<double> second;  // seconds^2

  double mean_at(int i, int j) const {
    return mean[static_cast<std::size_t>(i) * num_bases + j];
  }
  double second_at(int i, int j) const {
    return second[static_cast<std::size_t>(i) * num_bases + j];
  }
};

ServiceMoments service_moments(const Instance& inst);

// Arrival rate and pooled service moments of one open base under a design.
// Throws EmptyBase when no demand is assigned (callers treat metrics as zero).
struct BaseMoments {
  double eta = 0.0;       // per second
  double s_mean = 0.0;    // seconds
  double s_second = 0.0;  // seconds^2
};

BaseMoments base_moments(const Instance& inst, const ServiceMoments& moments,
                         const Design& design, int j);

// Mean queueing delay of an M/G/K system from the first two service moments
// (Nozaki-Ross closed form; exact for M/M/K and reduces to
// Pollaczek-Khinchine at K = 1). Throws UnstableQueue when eta*s_mean >= K
// and InvalidCapacity when K < 1. Stable for K up to at least 20: powers and
// factorials are accumulated term by term, never formed naively.
double mgk_delay(double eta, double s_mean, double s_second, int capacity);

struct QueueMetrics {
  std::vector<double> eta;       // |J|
  std::vector<double> s_mean;    // |J|
  std::vector<double> s_second;  // |J|
  std::vector<double> wq;        // |J|, mean queueing delay
  std::vector<double> resp;      // |I|, mean response per demand
  double avg_resp = 0.0;         // lambda-weighted network average
};

// The canonical objective evaluator: per-demand expected response
// wq_{y(i)} + d_{i,y(i)} / v and its lambda-weighted average. Used by the
// enumeration oracle, the greedy baseline, and solver verification.
QueueMetrics average_response(const Instance& inst, const ServiceMoments& moments,
                              const Design& design);

}  // namespace dronenet

#endif  // DRONENET_QUEUEING_HPP
