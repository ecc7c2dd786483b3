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

#include "dronenet/geo.hpp"

#include <cmath>
#include <string>

#include "dronenet/errors.hpp"

namespace dronenet {

namespace {
constexpr double kSemiMajorAxisM = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;
constexpr double kEccSq = kFlattening * (2.0 - kFlattening);
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}  // namespace

EcefPoint latlon_to_ecef(double latitude_deg, double longitude_deg) {
  if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0)) {
    throw InvalidCoordinate("latitude out of range: " + std::to_string(latitude_deg));
  }
  if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0)) {
    throw InvalidCoordinate("longitude out of range: " + std::to_string(longitude_deg));
  }
  const double phi = latitude_deg * kDegToRad;
  const double lam = longitude_deg * kDegToRad;
  const double sin_phi = std::sin(phi);
  const double cos_phi = std::cos(phi);
  // Prime vertical radius of curvature.
  const double n = kSemiMajorAxisM / std::sqrt(1.0 - kEccSq * sin_phi * sin_phi);
  EcefPoint out;
  out.a = n * cos_phi * std::cos(lam);
  out.b = n * cos_phi * std::sin(lam);
  out.c = n * (1.0 - kEccSq) * sin_phi;
  return out;
}

GeoPoint make_geo_point(double latitude_deg, double longitude_deg) {
  GeoPoint p;
  p.latitude_deg = latitude_deg;
  p.longitude_deg = longitude_deg;
  p.ecef = latlon_to_ecef(latitude_deg, longitude_deg);
  return p;
}

double ecef_distance(const EcefPoint& p, const EcefPoint& q) {
  const double da = p.a - q.a;
  const double db = p.b - q.b;
  const double dc = p.c - q.c;
  return std::sqrt(da * da + db * db + dc * dc);
}

}  // namespace dronenet
