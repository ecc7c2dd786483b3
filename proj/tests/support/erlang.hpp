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

#ifndef DRONENET_TESTS_SUPPORT_ERLANG_HPP
#define DRONENET_TESTS_SUPPORT_ERLANG_HPP

#include <cmath>

namespace dronenet::testing {

// Exact M/M/K mean queueing wait, written independently of the production
// path: Erlang-C delay probability times the conditional wait.
inline double erlang_c_wait(double arrival_rate, double service_mean, int servers) {
  const double a = arrival_rate * service_mean;  // offered load
  double factorial = 1.0;
  double sum = 0.0;
  for (int n = 0; n < servers; ++n) {
    if (n > 0) factorial *= n;
    sum += std::pow(a, n) / factorial;
  }
  factorial *= servers > 1 ? servers : 1;
  const double top = std::pow(a, servers) / factorial * (servers / (servers - a));
  const double p_wait = top / (sum + top);
  return p_wait * service_mean / (servers - a);
}

}  // namespace dronenet::testing

#endif  // DRONENET_TESTS_SUPPORT_ERLANG_HPP
