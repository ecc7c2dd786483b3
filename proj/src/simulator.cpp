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

#include "dronenet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "dronenet/errors.hpp"
#include "dronenet/queueing.hpp"

namespace dronenet {

namespace {

enum class EventKind : int { DroneAvailable = 0, Arrival = 1 };  // availability first

struct Event {
  double time;
  EventKind kind;
  std::int64_t seq;
  int payload;  // drone id or request id
};

struct EventOrder {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return static_cast<int>(a.kind) > static_cast<int>(b.kind);
    return a.seq > b.seq;
  }
};

}  // namespace

std::vector<SimRequest> poisson_arrivals(const Instance& inst, double horizon_s,
                                         std::uint64_t seed) {
  std::vector<SimRequest> arrivals;
  for (int i = 0; i < inst.num_demands(); ++i) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1));
    std::exponential_distribution<double> gap(inst.demands()[i].lambda);
    double t = gap(rng);
    while (t <= horizon_s) {
      arrivals.push_back(SimRequest{t, i});
      t += gap(rng);
    }
  }
  std::sort(arrivals.begin(), arrivals.end(), [](const SimRequest& a, const SimRequest& b) {
    if (a.time_s != b.time_s) return a.time_s < b.time_s;
    return a.demand < b.demand;
  });
  return arrivals;
}

SimOutcome simulate(const Instance& inst, const Design& design,
                    const std::vector<SimRequest>& arrivals, const SimConfig& config) {
  const int nj = inst.num_bases();
  // Drone ids are base-major so the lowest id breaks nearest-dispatch ties.
  std::vector<int> drone_base;
  for (int j = 0; j < nj; ++j) {
    for (int k = 0; k < design.drones[j]; ++k) drone_base.push_back(j);
  }
  const int num_drones = static_cast<int>(drone_base.size());
  std::vector<bool> available(num_drones, true);

  std::mt19937_64 rng(config.seed);
  auto draw_service = [&](int demand) {
    const double mean = inst.demands()[demand].xi_mean;
    if (!config.exponential_service) return mean;
    std::exponential_distribution<double> dist(1.0 / mean);
    return dist(rng);
  };

  SimOutcome out;
  out.requests.resize(arrivals.size());
  for (std::size_t r = 0; r < arrivals.size(); ++r) {
    out.requests[r].arrival_s = arrivals[r].time_s;
    out.requests[r].demand = arrivals[r].demand;
  }

  std::priority_queue<Event, std::vector<Event>, EventOrder> events;
  std::int64_t seq = 0;
  for (std::size_t r = 0; r < arrivals.size(); ++r) {
    events.push(Event{arrivals[r].time_s, EventKind::Arrival, seq++, static_cast<int>(r)});
  }

  std::vector<int> fifo;  // waiting request ids, oldest first

  auto eligible = [&](int request, int drone) {
    const int demand = out.requests[request].demand;
    const int base = drone_base[drone];
    if (config.policy == DispatchPolicy::StaticAssignment) {
      return design.assigned_base[demand] == base;
    }
    return inst.covers(demand, base);
  };
  auto nearest_available = [&](int request) {
    const int demand = out.requests[request].demand;
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int d = 0; d < num_drones; ++d) {
      if (!available[d] || !eligible(request, d)) continue;
      const double dist = inst.distance(demand, drone_base[d]);
      if (dist < best_d) {
        best_d = dist;
        best = d;
      }
    }
    return best;
  };

  double q_time_prev = arrivals.empty() ? 0.0 : arrivals.front().time_s;
  double q_area = 0.0;
  double horizon_end = q_time_prev;
  auto account_queue = [&](double now) {
    q_area += static_cast<double>(fifo.size()) * (now - q_time_prev);
    out.max_queue_len = std::max(out.max_queue_len, static_cast<std::int64_t>(fifo.size()));
    q_time_prev = now;
    horizon_end = std::max(horizon_end, now);
  };

  auto dispatch = [&](int request, int drone, double now) {
    auto& rec = out.requests[request];
    const int demand = rec.demand;
    const int base = drone_base[drone];
    const double flight = inst.distance(demand, base) / inst.params().v;
    rec.base = base;
    rec.drone = drone;
    rec.wait_s = now - rec.arrival_s;
    rec.flight_s = flight;
    rec.response_s = rec.wait_s + config.takeoff_s + flight + config.landing_s;
    rec.served = true;
    available[drone] = false;
    const double busy =
        config.takeoff_s + flight + draw_service(demand) + flight + config.landing_s;
    events.push(Event{now + busy, EventKind::DroneAvailable, seq++, drone});
  };

  while (!events.empty()) {
    const Event ev = events.top();
    events.pop();
    account_queue(ev.time);
    if (ev.kind == EventKind::Arrival) {
      const int request = ev.payload;
      const int demand = out.requests[request].demand;
      bool coverable = false;
      if (config.policy == DispatchPolicy::StaticAssignment) {
        coverable = design.assigned_base[demand] >= 0 &&
                    design.drones[design.assigned_base[demand]] > 0;
      } else {
        for (int j : inst.bases_covering(demand)) {
          if (design.drones[j] > 0) {
            coverable = true;
            break;
          }
        }
      }
      if (!coverable) {
        out.requests[request].unservable = true;
        ++out.unservable;
        continue;
      }
      const int drone = nearest_available(request);
      if (drone < 0) {
        fifo.push_back(request);
      } else {
        dispatch(request, drone, ev.time);
      }
    } else {
      available[ev.payload] = true;
      // Serve the oldest queued request coverable by any available drone,
      // repeatedly: one freed drone can unlock several chained matches.
      bool dispatched = true;
      while (dispatched) {
        dispatched = false;
        for (std::size_t pos = 0; pos < fifo.size(); ++pos) {
          const int drone = nearest_available(fifo[pos]);
          if (drone >= 0) {
            dispatch(fifo[pos], drone, ev.time);
            fifo.erase(fifo.begin() + static_cast<std::ptrdiff_t>(pos));
            dispatched = true;
            break;
          }
        }
      }
    }
  }

  out.queued_at_end = static_cast<std::int64_t>(fifo.size());
  std::vector<double> responses;
  double wait_sum = 0.0;
  for (const auto& rec : out.requests) {
    if (!rec.served) continue;
    ++out.served;
    responses.push_back(rec.response_s);
    wait_sum += rec.wait_s;
    out.max_response_s = std::max(out.max_response_s, rec.response_s);
  }
  if (!responses.empty()) {
    double sum = 0.0;
    for (double v : responses) sum += v;
    out.mean_response_s = sum / static_cast<double>(responses.size());
    out.mean_wait_s = wait_sum / static_cast<double>(responses.size());
    std::vector<double> sorted(responses);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    out.median_response_s = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  }
  out.mean_queue_len = horizon_end > 0.0 ? q_area / horizon_end : 0.0;
  return out;
}

namespace {
// Batch-means standard error over the values in service order.
double batch_se(const std::vector<double>& values, int batches = 30) {
  if (values.size() < static_cast<std::size_t>(batches) * 2) batches = 2;
  const std::size_t per = values.size() / batches;
  if (per == 0) return 0.0;
  std::vector<double> means;
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t k = 0; k < per; ++k) s += values[b * per + k];
    means.push_back(s / static_cast<double>(per));
  }
  double mean = 0.0;
  for (double v : means) mean += v;
  mean /= static_cast<double>(means.size());
  double var = 0.0;
  for (double v : means) var += (v - mean) * (v - mean);
  var /= static_cast<double>(means.size() - 1);
  return std::sqrt(var / static_cast<double>(means.size()));
}
}  // namespace

ValidationRecord long_run_validate(const Instance& inst, const Design& design, double horizon_s,
                                   std::uint64_t seed, const SimConfig& config) {
  SimConfig cfg = config;
  cfg.policy = DispatchPolicy::StaticAssignment;
  cfg.seed = seed;
  const auto arrivals = poisson_arrivals(inst, horizon_s, seed);
  const SimOutcome sim = simulate(inst, design, arrivals, cfg);

  const ServiceMoments moments = service_moments(inst);
  const QueueMetrics qm = average_response(inst, moments, design);

  ValidationRecord rec;
  rec.served = sim.served;
  std::vector<double> responses;
  std::vector<std::vector<double>> waits_by_base(inst.num_bases());
  for (const auto& r : sim.requests) {
    if (!r.served) continue;
    responses.push_back(r.response_s);
    waits_by_base[r.base].push_back(r.wait_s);
  }
  double rsum = 0.0;
  for (double v : responses) rsum += v;
  rec.sim_mean_response_s = responses.empty() ? 0.0 : rsum / static_cast<double>(responses.size());
  rec.response_se = batch_se(responses);
  rec.analytic_mean_response_s =
      qm.avg_resp + cfg.takeoff_s + cfg.landing_s;  // closed form excludes the fixed overheads
  for (int j = 0; j < inst.num_bases(); ++j) {
    if (design.drones[j] == 0 || waits_by_base[j].empty()) continue;
    BaseValidation bv;
    bv.base = j;
    bv.served = static_cast<std::int64_t>(waits_by_base[j].size());
    double s = 0.0;
    for (double v : waits_by_base[j]) s += v;
    bv.sim_mean_wait_s = s / static_cast<double>(waits_by_base[j].size());
    bv.wait_se = batch_se(waits_by_base[j]);
    bv.analytic_wait_s = qm.wq[j];
    rec.bases.push_back(bv);
  }
  return rec;
}

}  // namespace dronenet
