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

#ifndef DRONENET_IO_HPP
#define DRONENET_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dronenet/analytics.hpp"
#include "dronenet/design.hpp"
#include "dronenet/instance.hpp"
#include "dronenet/simulator.hpp"
#include "dronenet/solver.hpp"

namespace dronenet {

struct SolverConfig {
  std::string mode = "oa_bc";  // refo | oa | oa_bc
  double gap_tolerance = 1e-4;
  double time_limit_s = 3600.0;
  std::int64_t node_limit = -1;
  std::uint64_t seed = 1;
};

struct SimulatorConfig {
  std::string policy = "nearest";  // nearest | static
  int replications = 1;
  double horizon_s = 0.0;  // 0: replay the loaded timestamps
  double takeoff_s = 10.0;
  double landing_s = 10.0;
  bool exponential_service = false;
};

struct AnalyticsConfig {
  double ohca_rate = 0.15;
  std::vector<std::string> survival_models = {"bandara", "demaio", "chanta"};
  QalyParams qaly;
  double drone_unit_price = 15000.0;
  double drone_annual_maintenance = 3000.0;
  int lifespan_years = 4;
  double cost_discount_rate = 0.03;
  double incident_count = 0.0;          // overdoses per year; 0: derive from data
  double benchmark_response_min = 0.0;  // historical arm; 0: derive from data
};

struct RunConfig {
  std::string otr_csv;
  std::string bases_csv;
  std::string instance_json;  // alternative to the CSV pair
  InstanceParams params;
  double horizon_seconds = 0.0;
  bool merge_duplicate_coordinates = false;
  double xi_mean_s = 1500.0;         // non-travel service mean applied to CSV demands
  double xi_second_moment_s2 = 0.0;  // 0: deterministic, mean squared
  SolverConfig solver;
  SimulatorConfig simulator;
  AnalyticsConfig analytics;
};

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

// Loads a config file and applies DRONENET_* environment overrides
// (double-underscore path separator, e.g. DRONENET_SOLVER__MODE=oa).
RunConfig load_config(const std::string& path);

struct LoadedData {
  std::vector<DemandPoint> demands;
  std::vector<SimRequest> arrivals;            // replay stream, demand indices
  std::vector<double> historical_response_s;   // per arrival; NaN when absent
  double span_seconds = 0.0;
};

// CSV schema: timestamp_iso8601, latitude, longitude
// [, response_time_seconds]. One demand point per row (lambda =
// 1/horizon_seconds) unless merging identical coordinates.
LoadedData load_otr_csv(const std::string& path, double horizon_seconds,
                        bool merge_duplicates);

// CSV schema: id, latitude, longitude.
std::vector<CandidateBase> load_bases_csv(const std::string& path);

Instance instance_from_config(const RunConfig& config, LoadedData* data_out = nullptr);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json design_to_json(const Design& design);
Design design_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SolveReport& report);
nlohmann::json outcome_to_json(const SimOutcome& outcome);
void write_outcome_csv(const SimOutcome& outcome, std::ostream& os);
nlohmann::json validation_to_json(const ValidationRecord& record);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dronenet

#endif  // DRONENET_IO_HPP
