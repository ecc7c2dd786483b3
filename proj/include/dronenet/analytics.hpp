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

#ifndef DRONENET_ANALYTICS_HPP
#define DRONENET_ANALYTICS_HPP

#include <string>
#include <vector>

namespace dronenet {

// Published OHCA survival curves as functions of response time in minutes.
enum class SurvivalModel { Bandara, DeMaio, Chanta };

const char* to_string(SurvivalModel model);
SurvivalModel survival_model_from_string(const std::string& name);

double survival(SurvivalModel model, double response_minutes);

double expected_survivors(double incident_count, double ohca_rate, SurvivalModel model,
                          double response_minutes);

struct QalyParams {
  double life_expectancy_years = 11.4;
  double quality_coeff = 0.85;  // quality-of-life weight per year
  double discount_rate = 0.03;
};

// Discounted quality-adjusted years over the remaining life expectancy,
// annuity form with a fractional final year.
double t_qaly(const QalyParams& params);

// Sum of (1+c)^-t for t = 1..years.
double annuity_factor(int years, double rate);

// Purchase plus discounted maintenance over the fleet lifespan.
double network_cost(int n_drones, double unit_price, double annual_maintenance,
                    int lifespan_years, double discount_rate);

// Cost per incremental quality-adjusted life year; infinite when no
// additional survivors accrue.
double cost_per_qaly(double total_network_cost, double additional_survivors_per_year,
                     double t_qaly_years, int lifespan_years);

// Per-incident mode: average survival over a response-time sample instead of
// evaluating the curve at the mean.
double mean_survival(SurvivalModel model, const std::vector<double>& response_minutes);

}  // namespace dronenet

#endif  // DRONENET_ANALYTICS_HPP
