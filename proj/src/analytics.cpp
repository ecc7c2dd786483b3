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

#include "dronenet/analytics.hpp"

#include <cmath>
#include <limits>

#include "dronenet/errors.hpp"

namespace dronenet {

const char* to_string(SurvivalModel model) {
  switch (model) {
    case SurvivalModel::Bandara: return "bandara";
    case SurvivalModel::DeMaio: return "demaio";
    case SurvivalModel::Chanta: return "chanta";
  }
  return "?";
}

SurvivalModel survival_model_from_string(const std::string& name) {
  if (name == "bandara") return SurvivalModel::Bandara;
  if (name == "demaio") return SurvivalModel::DeMaio;
  if (name == "chanta") return SurvivalModel::Chanta;
  throw ConfigError("unknown survival model: " + name);
}

double survival(SurvivalModel model, double response_minutes) {
  const double x = response_minutes;
  switch (model) {
    case SurvivalModel::Bandara: return std::max(0.594 - 0.055 * x, 0.0);
    case SurvivalModel::DeMaio: return 1.0 / (1.0 + std::exp(0.679 + 0.262 * x));
    case SurvivalModel::Chanta: return 1.0 / (1.0 + std::exp(-0.015 + 0.245 * x));
  }
  return 0.0;
}

double expected_survivors(double incident_count, double ohca_rate, SurvivalModel model,
                          double response_minutes) {
  return incident_count * ohca_rate * survival(model, response_minutes);
}

double annuity_factor(int years, double rate) {
  double sum = 0.0;
  for (int t = 1; t <= years; ++t) sum += std::pow(1.0 + rate, -t);
  return sum;
}

double t_qaly(const QalyParams& params) {
  const double T = params.life_expectancy_years;
  const int whole = static_cast<int>(std::floor(T));
  const double frac = T - whole;
  double value = annuity_factor(whole, params.discount_rate);
  if (frac > 0.0) value += frac * std::pow(1.0 + params.discount_rate, -(whole + 1));
  return params.quality_coeff * value;
}

double network_cost(int n_drones, double unit_price, double annual_maintenance,
                    int lifespan_years, double discount_rate) {
  return n_drones * unit_price +
         n_drones * annual_maintenance * annuity_factor(lifespan_years, discount_rate);
}

double cost_per_qaly(double total_network_cost, double additional_survivors_per_year,
                     double t_qaly_years, int lifespan_years) {
  const double qaly = additional_survivors_per_year * lifespan_years * t_qaly_years;
  if (qaly <= 0.0) return std::numeric_limits<double>::infinity();
  return total_network_cost / qaly;
}

double mean_survival(SurvivalModel model, const std::vector<double>& response_minutes) {
  if (response_minutes.empty()) return 0.0;
  double sum = 0.0;
  for (double x : response_minutes) sum += survival(model, x);
  return sum / static_cast<double>(response_minutes.size());
}

}  // namespace dronenet
