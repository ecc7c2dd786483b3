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

#include "dronenet/queueing.hpp"

#include <cmath>

#include "dronenet/errors.hpp"

namespace dronenet {

ServiceMoments service_moments(const Instance& inst) {
  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  ServiceMoments sm;
  sm.num_demands = ni;
  sm.num_bases = nj;
  sm.mean.resize(static_cast<std::size_t>(ni) * nj);
  sm.second.resize(static_cast<std::size_t>(ni) * nj);
  const double beta = inst.params().beta;
  const double v = inst.params().v;
  for (int i = 0; i < ni; ++i) {
    const auto& d = inst.demands()[i];
    for (int j = 0; j < nj; ++j) {
      const double travel = beta * inst.distance(i, j) / v;
      const std::size_t k = static_cast<std::size_t>(i) * nj + j;
      sm.mean[k] = travel + d.xi_mean;
      sm.second[k] = travel * travel + 2.0 * travel * d.xi_mean + d.xi_second_moment;
    }
  }
  return sm;
}

BaseMoments base_moments(const Instance& inst, const ServiceMoments& moments,
                         const Design& design, int j) {
  double eta = 0.0;
  double num_mean = 0.0;
  double num_second = 0.0;
  for (int i : inst.demands_in_catchment(j)) {
    if (design.assigned_base[i] != j) continue;
    const double lam = inst.demands()[i].lambda;
    eta += lam;
    num_mean += lam * moments.mean_at(i, j);
    num_second += lam * moments.second_at(i, j);
  }
  if (eta <= 0.0) throw EmptyBase(j);
  return BaseMoments{eta, num_mean / eta, num_second / eta};
}

double mgk_delay(double eta, double s_mean, double s_second, int capacity) {
  if (capacity < 1) throw InvalidCapacity("queue capacity must be >= 1");
  if (eta == 0.0) return 0.0;
  const double rho = eta * s_mean;
  const double k = static_cast<double>(capacity);
  if (rho >= k) throw UnstableQueue(-1, rho, capacity);

  // f accumulates rho^(K-1) / (K-1)!; series accumulates
  // sum_{n=0}^{K-1} rho^n / n!, term by term.
  double f = 1.0;
  double series = 1.0;
  double term = 1.0;
  for (int n = 1; n <= capacity - 1; ++n) {
    term *= rho / static_cast<double>(n);
    series += term;
    f *= rho / static_cast<double>(n);
  }
  const double bracket = series + f * rho / (k - rho);
  return eta * s_second * f / (2.0 * (k - rho) * (k - rho) * bracket);
}

QueueMetrics average_response(const Instance& inst, const ServiceMoments& moments,
                              const Design& design) {
  const int ni = inst.num_demands();
  const int nj = inst.num_bases();
  QueueMetrics qm;
  qm.eta.assign(nj, 0.0);
  qm.s_mean.assign(nj, 0.0);
  qm.s_second.assign(nj, 0.0);
  qm.wq.assign(nj, 0.0);
  qm.resp.assign(ni, 0.0);

  for (int j = 0; j < nj; ++j) {
    if (!design.open[j]) continue;
    try {
      const BaseMoments bm = base_moments(inst, moments, design, j);
      qm.eta[j] = bm.eta;
      qm.s_mean[j] = bm.s_mean;
      qm.s_second[j] = bm.s_second;
      try {
        qm.wq[j] = mgk_delay(bm.eta, bm.s_mean, bm.s_second, design.drones[j]);
      } catch (const UnstableQueue&) {
        throw UnstableQueue(j, bm.eta * bm.s_mean, design.drones[j]);
      }
    } catch (const EmptyBase&) {
      // Open base with no assignment: idle, all metrics stay zero.
    }
  }

  double weighted = 0.0;
  for (int i = 0; i < ni; ++i) {
    const int j = design.assigned_base[i];
    if (j < 0 || j >= nj) throw InvalidParam("design leaves a demand unassigned");
    qm.resp[i] = qm.wq[j] + inst.distance(i, j) / inst.params().v;
    weighted += inst.demands()[i].lambda * qm.resp[i];
  }
  qm.avg_resp = weighted / inst.total_lambda();
  return qm;
}

}  // namespace dronenet
