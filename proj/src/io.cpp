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

#include "dronenet/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "dronenet/errors.hpp"

extern char** environ;

namespace dronenet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return out;
}

// days since 1970-01-01 for a proleptic Gregorian date
long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

double parse_iso8601_seconds(const std::string& ts, int row) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  double s = 0.0;
  if (std::sscanf(ts.c_str(), "%d-%d-%d%*[T ]%d:%d:%lf", &y, &mo, &d, &h, &mi, &s) < 3) {
    throw DataError("row " + std::to_string(row) + ": cannot parse timestamp '" + ts + "'");
  }
  return static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 + s;
}

double to_double(const std::string& text, int row, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DataError("row " + std::to_string(row) + ": bad " + std::string(what) + " '" + text +
                    "'");
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["otr_csv"] = c.otr_csv;
  j["bases_csv"] = c.bases_csv;
  j["instance_json"] = c.instance_json;
  j["horizon_seconds"] = c.horizon_seconds;
  j["merge_duplicate_coordinates"] = c.merge_duplicate_coordinates;
  j["xi_mean_s"] = c.xi_mean_s;
  j["xi_second_moment_s2"] = c.xi_second_moment_s2;
  j["params"] = {{"v", c.params.v},
                 {"beta", c.params.beta},
                 {"r", c.params.r},
                 {"p", c.params.p},
                 {"q", c.params.q},
                 {"M", c.params.M},
                 {"epsilon_ss", c.params.epsilon_ss},
                 {"rho_cap", c.params.rho_cap}};
  j["solver"] = {{"mode", c.solver.mode},
                 {"gap_tolerance", c.solver.gap_tolerance},
                 {"time_limit_s", c.solver.time_limit_s},
                 {"node_limit", c.solver.node_limit},
                 {"seed", c.solver.seed}};
  j["simulator"] = {{"policy", c.simulator.policy},
                    {"replications", c.simulator.replications},
                    {"horizon_s", c.simulator.horizon_s},
                    {"takeoff_s", c.simulator.takeoff_s},
                    {"landing_s", c.simulator.landing_s},
                    {"exponential_service", c.simulator.exponential_service}};
  j["analytics"] = {{"ohca_rate", c.analytics.ohca_rate},
                    {"survival_models", c.analytics.survival_models},
                    {"qaly",
                     {{"life_expectancy_years", c.analytics.qaly.life_expectancy_years},
                      {"quality_coeff", c.analytics.qaly.quality_coeff},
                      {"discount_rate", c.analytics.qaly.discount_rate}}},
                    {"drone_unit_price", c.analytics.drone_unit_price},
                    {"drone_annual_maintenance", c.analytics.drone_annual_maintenance},
                    {"lifespan_years", c.analytics.lifespan_years},
                    {"cost_discount_rate", c.analytics.cost_discount_rate},
                    {"incident_count", c.analytics.incident_count},
                    {"benchmark_response_min", c.analytics.benchmark_response_min}};
  return j;
}

namespace {
template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}
}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  maybe(j, "otr_csv", c.otr_csv);
  maybe(j, "bases_csv", c.bases_csv);
  maybe(j, "instance_json", c.instance_json);
  maybe(j, "horizon_seconds", c.horizon_seconds);
  maybe(j, "merge_duplicate_coordinates", c.merge_duplicate_coordinates);
  maybe(j, "xi_mean_s", c.xi_mean_s);
  maybe(j, "xi_second_moment_s2", c.xi_second_moment_s2);
  if (j.contains("params")) {
    const auto& p = j.at("params");
    maybe(p, "v", c.params.v);
    maybe(p, "beta", c.params.beta);
    maybe(p, "r", c.params.r);
    maybe(p, "p", c.params.p);
    maybe(p, "q", c.params.q);
    maybe(p, "M", c.params.M);
    maybe(p, "epsilon_ss", c.params.epsilon_ss);
    maybe(p, "rho_cap", c.params.rho_cap);
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    maybe(s, "mode", c.solver.mode);
    maybe(s, "gap_tolerance", c.solver.gap_tolerance);
    maybe(s, "time_limit_s", c.solver.time_limit_s);
    maybe(s, "node_limit", c.solver.node_limit);
    maybe(s, "seed", c.solver.seed);
  }
  if (j.contains("simulator")) {
    const auto& s = j.at("simulator");
    maybe(s, "policy", c.simulator.policy);
    maybe(s, "replications", c.simulator.replications);
    maybe(s, "horizon_s", c.simulator.horizon_s);
    maybe(s, "takeoff_s", c.simulator.takeoff_s);
    maybe(s, "landing_s", c.simulator.landing_s);
    maybe(s, "exponential_service", c.simulator.exponential_service);
  }
  if (j.contains("analytics")) {
    const auto& a = j.at("analytics");
    maybe(a, "ohca_rate", c.analytics.ohca_rate);
    maybe(a, "survival_models", c.analytics.survival_models);
    if (a.contains("qaly")) {
      const auto& qj = a.at("qaly");
      maybe(qj, "life_expectancy_years", c.analytics.qaly.life_expectancy_years);
      maybe(qj, "quality_coeff", c.analytics.qaly.quality_coeff);
      maybe(qj, "discount_rate", c.analytics.qaly.discount_rate);
    }
    maybe(a, "drone_unit_price", c.analytics.drone_unit_price);
    maybe(a, "drone_annual_maintenance", c.analytics.drone_annual_maintenance);
    maybe(a, "lifespan_years", c.analytics.lifespan_years);
    maybe(a, "cost_discount_rate", c.analytics.cost_discount_rate);
    maybe(a, "incident_count", c.analytics.incident_count);
    maybe(a, "benchmark_response_min", c.analytics.benchmark_response_min);
  }
  return c;
}

namespace {

void apply_env_override(nlohmann::json& j, const std::string& path, const std::string& value) {
  nlohmann::json* cur = &j;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = path.find("__", start);
    const std::string key = path.substr(start, sep == std::string::npos ? sep : sep - start);
    if (sep == std::string::npos) {
      // keep the original type when the key exists
      if (cur->contains(key) && !(*cur)[key].is_string()) {
        try {
          (*cur)[key] = nlohmann::json::parse(value);
        } catch (const nlohmann::json::parse_error&) {
          (*cur)[key] = value;
        }
      } else {
        (*cur)[key] = value;
      }
      return;
    }
    cur = &(*cur)[key];
    start = sep + 2;
  }
}

}  // namespace

RunConfig load_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  for (char** env = environ; *env != nullptr; ++env) {
    const std::string entry(*env);
    const std::string prefix = "DRONENET_";
    if (entry.rfind(prefix, 0) != 0) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) continue;
    std::string key = entry.substr(prefix.size(), eq - prefix.size());
    for (auto& ch : key) ch = static_cast<char>(std::tolower(ch));
    apply_env_override(j, key, entry.substr(eq + 1));
  }
  try {
    return config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config field error in " + path + ": " + e.what());
  }
}

LoadedData load_otr_csv(const std::string& path, double horizon_seconds, bool merge_duplicates) {
  if (!(horizon_seconds > 0.0)) {
    throw ConfigError("horizon_seconds must be positive to derive request rates");
  }
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  LoadedData out;
  std::map<std::pair<double, double>, int> merged_index;
  std::vector<double> timestamps;
  std::string line;
  int row = 0;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv_line(line);
    if (!header_checked) {
      header_checked = true;
      if (!fields.empty() && fields[0].find("timestamp") != std::string::npos) continue;
    }
    if (fields.size() < 3) {
      throw DataError("row " + std::to_string(row) + ": expected timestamp, latitude, longitude");
    }
    const double ts = parse_iso8601_seconds(fields[0], row);
    const double lat = to_double(fields[1], row, "latitude");
    const double lon = to_double(fields[2], row, "longitude");
    double hist = std::numeric_limits<double>::quiet_NaN();
    if (fields.size() >= 4 && !fields[3].empty()) {
      hist = to_double(fields[3], row, "response_time_seconds");
    }

    int index;
    const auto key = std::make_pair(lat, lon);
    if (merge_duplicates && merged_index.count(key) != 0) {
      index = merged_index[key];
      out.demands[index].lambda += 1.0 / horizon_seconds;
    } else {
      DemandPoint d;
      d.id = static_cast<int>(out.demands.size());
      d.location = make_geo_point(lat, lon);
      d.lambda = 1.0 / horizon_seconds;
      d.xi_mean = 25.0 * 60.0;  // overridden from the config after loading
      d.xi_second_moment = d.xi_mean * d.xi_mean;
      d.arrival_time_s = ts;
      if (!std::isnan(hist)) d.historical_response_s = hist;
      index = d.id;
      out.demands.push_back(std::move(d));
      if (merge_duplicates) merged_index[key] = index;
    }
    timestamps.push_back(ts);
    out.arrivals.push_back(SimRequest{ts, index});
    out.historical_response_s.push_back(hist);
  }
  if (out.demands.empty()) throw DataError(path + ": no data rows");

  double t0 = timestamps[0];
  for (double t : timestamps) t0 = std::min(t0, t);
  double t1 = t0;
  for (auto& a : out.arrivals) {
    a.time_s -= t0;
    t1 = std::max(t1, a.time_s);
  }
  std::sort(out.arrivals.begin(), out.arrivals.end(), [](const SimRequest& a, const SimRequest& b) {
    if (a.time_s != b.time_s) return a.time_s < b.time_s;
    return a.demand < b.demand;
  });
  out.span_seconds = t1;
  return out;
}

std::vector<CandidateBase> load_bases_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<CandidateBase> out;
  std::string line;
  int row = 0;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv_line(line);
    if (!header_checked) {
      header_checked = true;
      if (!fields.empty() &&
          (fields[0].find("id") != std::string::npos || fields[0].find("lat") != std::string::npos)) {
        continue;
      }
    }
    if (fields.size() < 3) {
      throw DataError("row " + std::to_string(row) + ": expected id, latitude, longitude");
    }
    CandidateBase b;
    b.id = static_cast<int>(to_double(fields[0], row, "id"));
    b.location = make_geo_point(to_double(fields[1], row, "latitude"),
                                to_double(fields[2], row, "longitude"));
    out.push_back(b);
  }
  if (out.empty()) throw DataError(path + ": no data rows");
  return out;
}

Instance instance_from_config(const RunConfig& config, LoadedData* data_out) {
  if (!config.instance_json.empty()) {
    auto inst = instance_from_json(nlohmann::json::parse(read_text_file(config.instance_json)));
    if (data_out != nullptr) {
      data_out->demands = inst.demands();
      data_out->arrivals.clear();
      for (int i = 0; i < inst.num_demands(); ++i) {
        const auto& d = inst.demands()[i];
        if (d.arrival_time_s.has_value()) {
          data_out->arrivals.push_back(SimRequest{*d.arrival_time_s, i});
        }
      }
    }
    return inst;
  }
  if (config.otr_csv.empty() || config.bases_csv.empty()) {
    throw ConfigError("either instance_json or both otr_csv and bases_csv are required");
  }
  LoadedData data = load_otr_csv(config.otr_csv, config.horizon_seconds,
                                 config.merge_duplicate_coordinates);
  for (auto& d : data.demands) {
    d.xi_mean = config.xi_mean_s;
    d.xi_second_moment = config.xi_second_moment_s2 > 0.0 ? config.xi_second_moment_s2
                                                          : config.xi_mean_s * config.xi_mean_s;
  }
  auto bases = load_bases_csv(config.bases_csv);
  if (data_out != nullptr) *data_out = data;
  return Instance::build(std::move(data.demands), std::move(bases), config.params);
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["params"] = {{"v", inst.params().v},
                 {"beta", inst.params().beta},
                 {"r", inst.params().r},
                 {"p", inst.params().p},
                 {"q", inst.params().q},
                 {"M", inst.params().M},
                 {"epsilon_ss", inst.params().epsilon_ss},
                 {"rho_cap", inst.params().rho_cap}};
  j["demands"] = nlohmann::json::array();
  for (const auto& d : inst.demands()) {
    nlohmann::json dj = {{"id", d.id},
                         {"latitude", d.location.latitude_deg},
                         {"longitude", d.location.longitude_deg},
                         {"lambda", d.lambda},
                         {"xi_mean", d.xi_mean},
                         {"xi_second_moment", d.xi_second_moment}};
    if (d.arrival_time_s.has_value()) dj["arrival_time_s"] = *d.arrival_time_s;
    if (d.historical_response_s.has_value()) dj["historical_response_s"] = *d.historical_response_s;
    j["demands"].push_back(std::move(dj));
  }
  j["bases"] = nlohmann::json::array();
  for (const auto& b : inst.bases()) {
    j["bases"].push_back({{"id", b.id},
                          {"latitude", b.location.latitude_deg},
                          {"longitude", b.location.longitude_deg}});
  }
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  InstanceParams params;
  const auto& p = j.at("params");
  maybe(p, "v", params.v);
  maybe(p, "beta", params.beta);
  maybe(p, "r", params.r);
  maybe(p, "p", params.p);
  maybe(p, "q", params.q);
  maybe(p, "M", params.M);
  maybe(p, "epsilon_ss", params.epsilon_ss);
  maybe(p, "rho_cap", params.rho_cap);

  std::vector<DemandPoint> demands;
  for (const auto& dj : j.at("demands")) {
    DemandPoint d;
    d.id = dj.at("id").get<int>();
    d.location = make_geo_point(dj.at("latitude").get<double>(), dj.at("longitude").get<double>());
    d.lambda = dj.at("lambda").get<double>();
    d.xi_mean = dj.at("xi_mean").get<double>();
    d.xi_second_moment = dj.contains("xi_second_moment")
                             ? dj.at("xi_second_moment").get<double>()
                             : d.xi_mean * d.xi_mean;
    if (dj.contains("arrival_time_s")) d.arrival_time_s = dj.at("arrival_time_s").get<double>();
    if (dj.contains("historical_response_s")) {
      d.historical_response_s = dj.at("historical_response_s").get<double>();
    }
    demands.push_back(std::move(d));
  }
  std::vector<CandidateBase> bases;
  for (const auto& bj : j.at("bases")) {
    CandidateBase b;
    b.id = bj.at("id").get<int>();
    b.location = make_geo_point(bj.at("latitude").get<double>(), bj.at("longitude").get<double>());
    bases.push_back(b);
  }
  return Instance::build(std::move(demands), std::move(bases), params);
}

nlohmann::json design_to_json(const Design& design) {
  nlohmann::json j;
  j["open"] = design.open;
  j["drones"] = design.drones;
  j["assigned_base"] = design.assigned_base;
  j["gamma"] = design.gamma;
  return j;
}

Design design_from_json(const nlohmann::json& j) {
  Design d;
  d.open = j.at("open").get<std::vector<std::uint8_t>>();
  d.drones = j.at("drones").get<std::vector<int>>();
  d.assigned_base = j.at("assigned_base").get<std::vector<int>>();
  d.gamma = j.at("gamma").get<std::vector<std::uint8_t>>();
  return d;
}

nlohmann::json report_to_json(const SolveReport& report) {
  nlohmann::json j;
  j["status"] = to_string(report.status);
  j["has_incumbent"] = report.has_incumbent;
  if (report.has_incumbent) {
    j["objective_s"] = report.objective;
    j["design"] = design_to_json(report.incumbent);
  }
  j["lower_bound_s"] = report.lower_bound;
  j["gap"] = std::isfinite(report.gap) ? report.gap : -1.0;
  j["nodes"] = report.nodes;
  j["lazy_reinstated"] = report.lazy_reinstated;
  j["user_cuts_applied"] = report.user_cuts_applied;
  j["lp_iterations"] = report.lp_iterations;
  j["wall_time_s"] = report.wall_time_s;
  return j;
}

nlohmann::json outcome_to_json(const SimOutcome& outcome) {
  nlohmann::json j;
  j["served"] = outcome.served;
  j["unservable"] = outcome.unservable;
  j["queued_at_end"] = outcome.queued_at_end;
  j["mean_response_s"] = outcome.mean_response_s;
  j["median_response_s"] = outcome.median_response_s;
  j["max_response_s"] = outcome.max_response_s;
  j["mean_wait_s"] = outcome.mean_wait_s;
  j["mean_queue_len"] = outcome.mean_queue_len;
  j["max_queue_len"] = outcome.max_queue_len;
  return j;
}

void write_outcome_csv(const SimOutcome& outcome, std::ostream& os) {
  os << "arrival_s,demand,base,drone,wait_s,flight_s,response_s,served,unservable\n";
  for (const auto& r : outcome.requests) {
    os << r.arrival_s << "," << r.demand << "," << r.base << "," << r.drone << "," << r.wait_s
       << "," << r.flight_s << "," << r.response_s << "," << (r.served ? 1 : 0) << ","
       << (r.unservable ? 1 : 0) << "\n";
  }
}

nlohmann::json validation_to_json(const ValidationRecord& record) {
  nlohmann::json j;
  j["served"] = record.served;
  j["sim_mean_response_s"] = record.sim_mean_response_s;
  j["response_se"] = record.response_se;
  j["analytic_mean_response_s"] = record.analytic_mean_response_s;
  j["bases"] = nlohmann::json::array();
  for (const auto& b : record.bases) {
    j["bases"].push_back({{"base", b.base},
                          {"sim_mean_wait_s", b.sim_mean_wait_s},
                          {"wait_se", b.wait_se},
                          {"analytic_wait_s", b.analytic_wait_s},
                          {"served", b.served}});
  }
  return j;
}

}  // namespace dronenet
