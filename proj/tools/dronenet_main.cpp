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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dronenet/analytics.hpp"
#include "dronenet/enumeration.hpp"
#include "dronenet/errors.hpp"
#include "dronenet/greedy.hpp"
#include "dronenet/io.hpp"
#include "dronenet/milp.hpp"
#include "dronenet/queueing.hpp"
#include "dronenet/simulator.hpp"
#include "dronenet/solver.hpp"

namespace {

using dronenet::ConfigError;
using dronenet::DataError;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitTimeLimit = 5;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << std::endl;
  } else {
    dronenet::write_text_file(out_path, j.dump(2) + "\n");
  }
}

dronenet::SolveMode parse_mode(std::string mode) {
  std::transform(mode.begin(), mode.end(), mode.begin(), ::tolower);
  if (mode == "refo") return dronenet::SolveMode::REFO;
  if (mode == "oa") return dronenet::SolveMode::OA;
  if (mode == "oa_bc" || mode == "oabc" || mode == "oa-bc") return dronenet::SolveMode::OA_BC;
  throw ConfigError("unknown solver mode: " + mode);
}

dronenet::LinearizedModel build_model(const dronenet::Instance& inst) {
  const auto moments = dronenet::service_moments(inst);
  if (inst.params().M == 2) return dronenet::linearize_m2(inst, moments);
  return dronenet::linearize_general(inst, moments, inst.params().M, &std::cerr);
}

int cmd_solve(const std::string& config_path, const std::string& mode_override,
              double time_limit_override, const std::string& out_path,
              const std::string& export_lp_path, const std::string& trace_path) {
  dronenet::RunConfig cfg = dronenet::load_config(config_path);
  if (!mode_override.empty()) cfg.solver.mode = mode_override;
  if (time_limit_override > 0) cfg.solver.time_limit_s = time_limit_override;

  const dronenet::Instance inst = dronenet::instance_from_config(cfg);
  const auto model = build_model(inst);
  if (!export_lp_path.empty()) {
    std::ofstream lp(export_lp_path);
    dronenet::export_lp_text(model, lp);
  }
  dronenet::SolveParams params;
  params.gap_tolerance = cfg.solver.gap_tolerance;
  params.time_limit_s = cfg.solver.time_limit_s;
  params.node_limit = cfg.solver.node_limit;
  std::ofstream trace_file;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    params.trace = &trace_file;
  }
  const auto report = dronenet::solve(model, parse_mode(cfg.solver.mode), params);
  json j = dronenet::report_to_json(report);
  j["mode"] = cfg.solver.mode;
  emit(j, out_path);
  if (report.status == dronenet::SolveStatus::Infeasible) return kExitInfeasible;
  if (report.status == dronenet::SolveStatus::TimeLimit) return kExitTimeLimit;
  return report.status == dronenet::SolveStatus::Optimal ? kExitOk : kExitData;
}

int cmd_oracle(const std::string& config_path, const std::string& out_path) {
  dronenet::RunConfig cfg = dronenet::load_config(config_path);
  const dronenet::Instance inst = dronenet::instance_from_config(cfg);
  try {
    const auto res = dronenet::enumerate_optimum(inst);
    json j;
    j["objective_s"] = res.objective;
    j["evaluated"] = res.evaluated;
    j["pruned"] = res.pruned;
    j["design"] = dronenet::design_to_json(res.best);
    emit(j, out_path);
    return kExitOk;
  } catch (const dronenet::NoFeasibleDesign& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  }
}

int cmd_heuristic(const std::string& config_path, const std::string& out_path) {
  dronenet::RunConfig cfg = dronenet::load_config(config_path);
  const dronenet::Instance inst = dronenet::instance_from_config(cfg);
  const auto res = dronenet::greedy_design(inst);
  json j;
  j["design"] = dronenet::design_to_json(res.design);
  j["stable"] = res.stable;
  j["uncovered_demands"] = res.uncovered;
  if (std::isfinite(res.objective)) {
    j["objective_s"] = res.objective;
  } else {
    j["objective_s"] = nullptr;
    j["note"] = "average response undefined: steady state violated or demand uncovered";
  }
  emit(j, out_path);
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& design_path,
                 const std::string& out_path, const std::string& csv_path,
                 std::uint64_t seed_override, bool validate) {
  dronenet::RunConfig cfg = dronenet::load_config(config_path);
  dronenet::LoadedData data;
  const dronenet::Instance inst = dronenet::instance_from_config(cfg, &data);
  if (design_path.empty()) throw ConfigError("simulate requires --design");
  const auto design =
      dronenet::design_from_json(json::parse(dronenet::read_text_file(design_path)));

  dronenet::SimConfig sim_cfg;
  sim_cfg.policy = cfg.simulator.policy == "static" ? dronenet::DispatchPolicy::StaticAssignment
                                                    : dronenet::DispatchPolicy::Nearest;
  sim_cfg.takeoff_s = cfg.simulator.takeoff_s;
  sim_cfg.landing_s = cfg.simulator.landing_s;
  sim_cfg.exponential_service = cfg.simulator.exponential_service;
  sim_cfg.seed = seed_override != 0 ? seed_override : cfg.solver.seed;

  if (validate) {
    const double horizon = cfg.simulator.horizon_s > 0 ? cfg.simulator.horizon_s : 1e7;
    const auto rec = dronenet::long_run_validate(inst, design, horizon, sim_cfg.seed, sim_cfg);
    emit(dronenet::validation_to_json(rec), out_path);
    return kExitOk;
  }

  json reps = json::array();
  for (int rep = 0; rep < std::max(1, cfg.simulator.replications); ++rep) {
    std::vector<dronenet::SimRequest> arrivals;
    if (cfg.simulator.horizon_s > 0) {
      arrivals = dronenet::poisson_arrivals(inst, cfg.simulator.horizon_s, sim_cfg.seed + rep);
    } else {
      arrivals = data.arrivals;
      if (arrivals.empty()) {
        throw DataError("no timestamps available for replay; set simulator.horizon_s");
      }
    }
    dronenet::SimConfig rep_cfg = sim_cfg;
    rep_cfg.seed = sim_cfg.seed + rep;
    const auto outcome = dronenet::simulate(inst, design, arrivals, rep_cfg);
    if (!csv_path.empty() && rep == 0) {
      std::ofstream csv(csv_path);
      dronenet::write_outcome_csv(outcome, csv);
    }
    reps.push_back(dronenet::outcome_to_json(outcome));
  }
  json j;
  j["replications"] = reps;
  emit(j, out_path);
  return kExitOk;
}

int cmd_analyze(const std::string& config_path, double drone_response_min,
                double ems_response_min, const std::string& drone_responses_csv,
                const std::string& out_path) {
  dronenet::RunConfig cfg = dronenet::load_config(config_path);
  auto& an = cfg.analytics;

  double incident_count = an.incident_count;
  double ems_min = ems_response_min > 0 ? ems_response_min : an.benchmark_response_min;
  if ((incident_count <= 0 || ems_min <= 0) && !cfg.otr_csv.empty()) {
    const auto data = dronenet::load_otr_csv(cfg.otr_csv, cfg.horizon_seconds > 0
                                                              ? cfg.horizon_seconds
                                                              : 365.0 * 86400.0,
                                             false);
    if (incident_count <= 0) incident_count = static_cast<double>(data.arrivals.size());
    if (ems_min <= 0) {
      double sum = 0.0;
      int n = 0;
      for (double r : data.historical_response_s) {
        if (!std::isnan(r)) {
          sum += r;
          ++n;
        }
      }
      if (n > 0) ems_min = sum / n / 60.0;
    }
  }
  if (incident_count <= 0 || ems_min <= 0 || drone_response_min <= 0) {
    throw ConfigError(
        "analyze needs incident_count, a benchmark response and --drone-response-min "
        "(from config, data, or flags)");
  }

  std::vector<double> drone_samples_min;
  if (!drone_responses_csv.empty()) {
    std::ifstream in(drone_responses_csv);
    if (!in) throw DataError("cannot open " + drone_responses_csv);
    std::string line;
    std::getline(in, line);  // header
    std::stringstream header(line);
    std::vector<std::string> cols;
    std::string c;
    while (std::getline(header, c, ',')) cols.push_back(c);
    const auto resp_it = std::find(cols.begin(), cols.end(), "response_s");
    const auto served_it = std::find(cols.begin(), cols.end(), "served");
    if (resp_it == cols.end()) throw DataError("response_s column missing");
    const std::size_t resp_col = static_cast<std::size_t>(resp_it - cols.begin());
    const std::size_t served_col =
        served_it == cols.end() ? SIZE_MAX : static_cast<std::size_t>(served_it - cols.begin());
    while (std::getline(in, line)) {
      std::stringstream row(line);
      std::vector<std::string> fields;
      while (std::getline(row, c, ',')) fields.push_back(c);
      if (fields.size() <= resp_col) continue;
      if (served_col != SIZE_MAX && fields.size() > served_col && fields[served_col] == "0") {
        continue;
      }
      drone_samples_min.push_back(std::stod(fields[resp_col]) / 60.0);
    }
  }

  const double ohca = incident_count * an.ohca_rate;
  const double tq = dronenet::t_qaly(an.qaly);
  const double cost =
      dronenet::network_cost(cfg.params.p, an.drone_unit_price, an.drone_annual_maintenance,
                             an.lifespan_years, an.cost_discount_rate);

  json models = json::array();
  for (const auto& name : an.survival_models) {
    const auto model = dronenet::survival_model_from_string(name);
    const double s_drone = dronenet::survival(model, drone_response_min);
    const double s_ems = dronenet::survival(model, ems_min);
    const double survivors_drone = ohca * s_drone;
    const double survivors_ems = ohca * s_ems;
    const double additional = survivors_drone - survivors_ems;
    json m;
    m["model"] = name;
    m["drone_survival"] = s_drone;
    m["ems_survival"] = s_ems;
    m["drone_survivors"] = survivors_drone;
    m["ems_survivors"] = survivors_ems;
    m["additional_survivors_per_year"] = additional;
    m["additional_qaly_per_year"] = additional * tq;
    m["total_additional_qaly"] = additional * tq * an.lifespan_years;
    m["cost_per_additional_qaly"] =
        dronenet::cost_per_qaly(cost, additional, tq, an.lifespan_years);
    if (!drone_samples_min.empty()) {
      const double s_mean = dronenet::mean_survival(model, drone_samples_min);
      m["drone_survival_per_incident"] = s_mean;
      m["drone_survivors_per_incident"] = ohca * s_mean;
    }
    models.push_back(std::move(m));
  }

  json j;
  j["incident_count"] = incident_count;
  j["ohca_rate"] = an.ohca_rate;
  j["ohca_count"] = ohca;
  j["drone_response_min"] = drone_response_min;
  j["ems_response_min"] = ems_min;
  j["t_qaly_years"] = tq;
  j["t_qaly_note"] =
      "discounted annuity with fractional final year; quality weight applied to every year";
  j["network_cost"] = cost;
  j["n_drones"] = cfg.params.p;
  j["models"] = models;
  emit(j, out_path);
  return kExitOk;
}

int cmd_bench(const std::string& config_path, const std::vector<std::string>& instance_paths,
              const std::string& modes_csv, double time_limit, const std::string& out_prefix) {
  dronenet::RunConfig cfg = dronenet::load_config(config_path);
  std::vector<std::string> modes;
  {
    std::stringstream ss(modes_csv);
    std::string m;
    while (std::getline(ss, m, ',')) modes.push_back(m);
  }
  if (modes.empty() || instance_paths.empty()) {
    throw ConfigError("bench requires --instances and --modes");
  }

  struct Cell {
    std::string instance;
    std::string mode;
    std::string status;
    double objective = 0.0;
    std::int64_t nodes = 0;
    double time_s = 0.0;
    bool solved = false;
  };
  std::vector<Cell> cells;
  for (const auto& path : instance_paths) {
    const auto inst = dronenet::instance_from_json(json::parse(dronenet::read_text_file(path)));
    const auto model = build_model(inst);
    for (const auto& mode : modes) {
      dronenet::SolveParams params;
      params.gap_tolerance = cfg.solver.gap_tolerance;
      params.time_limit_s = time_limit > 0 ? time_limit : cfg.solver.time_limit_s;
      const auto report = dronenet::solve(model, parse_mode(mode), params);
      Cell cell;
      cell.instance = path;
      cell.mode = mode;
      cell.status = to_string(report.status);
      cell.objective = report.has_incumbent ? report.objective : -1.0;
      cell.nodes = report.nodes;
      cell.time_s = report.wall_time_s;
      cell.solved = report.status == dronenet::SolveStatus::Optimal;
      cells.push_back(cell);
      std::cerr << path << " " << mode << " " << cell.status << " t=" << cell.time_s << "s\n";
    }
  }

  std::ostringstream matrix;
  matrix << "instance,mode,status,objective_s,nodes,time_s,solved\n";
  for (const auto& c : cells) {
    matrix << c.instance << "," << c.mode << "," << c.status << "," << c.objective << ","
           << c.nodes << "," << c.time_s << "," << (c.solved ? 1 : 0) << "\n";
  }
  dronenet::write_text_file(out_prefix + "_matrix.csv", matrix.str());

  // Cumulative instances-solved-by-time profile per mode.
  std::ostringstream profile;
  profile << "mode,time_s,solved\n";
  std::ostringstream summary;
  for (const auto& mode : modes) {
    std::vector<double> times;
    for (const auto& c : cells) {
      if (c.mode == mode && c.solved) times.push_back(c.time_s);
    }
    std::sort(times.begin(), times.end());
    for (std::size_t k = 0; k < times.size(); ++k) {
      profile << mode << "," << times[k] << "," << (k + 1) << "\n";
    }
    summary << mode << ": solved " << times.size() << "/" << instance_paths.size();
    if (!times.empty()) summary << ", last at " << times.back() << "s";
    summary << "\n";
  }
  dronenet::write_text_file(out_prefix + "_profile.csv", profile.str());
  dronenet::write_text_file(out_prefix + "_summary.txt", summary.str());
  std::cout << summary.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drone emergency-response network design toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, mode, export_lp, trace_path, design_path, csv_path;
  std::string drone_responses_csv, modes_csv = "refo,oa,oa_bc", out_prefix = "bench";
  std::vector<std::string> instances;
  double time_limit = 0.0, drone_response_min = 0.0, ems_response_min = 0.0;
  std::uint64_t seed = 0;
  bool validate = false;

  auto* solve_cmd = app.add_subcommand("solve", "solve the network design problem");
  solve_cmd->add_option("--config", config_path)->required();
  solve_cmd->add_option("--mode", mode, "refo|oa|oa_bc");
  solve_cmd->add_option("--time-limit", time_limit, "seconds");
  solve_cmd->add_option("--out", out_path);
  solve_cmd->add_option("--export-lp", export_lp);
  solve_cmd->add_option("--trace", trace_path);

  auto* oracle_cmd = app.add_subcommand("oracle", "certified brute-force optimum");
  oracle_cmd->add_option("--config", config_path)->required();
  oracle_cmd->add_option("--out", out_path);

  auto* heur_cmd = app.add_subcommand("heuristic", "greedy baseline design");
  heur_cmd->add_option("--config", config_path)->required();
  heur_cmd->add_option("--out", out_path);

  auto* sim_cmd = app.add_subcommand("simulate", "discrete-event dispatch simulation");
  sim_cmd->add_option("--config", config_path)->required();
  sim_cmd->add_option("--design", design_path, "design JSON path")->required();
  sim_cmd->add_option("--out", out_path);
  sim_cmd->add_option("--csv-out", csv_path, "per-request CSV");
  sim_cmd->add_option("--seed", seed);
  sim_cmd->add_flag("--validate", validate, "long-run comparison against the closed forms");

  auto* analyze_cmd = app.add_subcommand("analyze", "survival, QALY and cost analytics");
  analyze_cmd->add_option("--config", config_path)->required();
  analyze_cmd->add_option("--drone-response-min", drone_response_min)->required();
  analyze_cmd->add_option("--ems-response-min", ems_response_min);
  analyze_cmd->add_option("--drone-responses-csv", drone_responses_csv,
                          "per-request CSV for per-incident survival");
  analyze_cmd->add_option("--out", out_path);

  auto* bench_cmd = app.add_subcommand("bench", "mode x instance performance matrix");
  bench_cmd->add_option("--config", config_path)->required();
  bench_cmd->add_option("--instances", instances)->required();
  bench_cmd->add_option("--modes", modes_csv);
  bench_cmd->add_option("--time-limit", time_limit);
  bench_cmd->add_option("--out-prefix", out_prefix);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      return cmd_solve(config_path, mode, time_limit, out_path, export_lp, trace_path);
    }
    if (oracle_cmd->parsed()) return cmd_oracle(config_path, out_path);
    if (heur_cmd->parsed()) return cmd_heuristic(config_path, out_path);
    if (sim_cmd->parsed()) {
      return cmd_simulate(config_path, design_path, out_path, csv_path, seed, validate);
    }
    if (analyze_cmd->parsed()) {
      return cmd_analyze(config_path, drone_response_min, ems_response_min, drone_responses_csv,
                         out_path);
    }
    if (bench_cmd->parsed()) {
      return cmd_bench(config_path, instances, modes_csv, time_limit, out_prefix);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const dronenet::NoFeasibleDesign& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const dronenet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
