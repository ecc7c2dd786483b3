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

#ifndef DRONENET_GEO_HPP
#define DRONENET_GEO_HPP

namespace dronenet {

// Earth-centered earth-fixed coordinates in meters.
struct EcefPoint {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct GeoPoint {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  EcefPoint ecef;
};

// WGS-84 transform at ellipsoid height zero. Throws InvalidCoordinate when
// lat is outside [-90, 90] or lon outside [-180, 180].
EcefPoint latlon_to_ecef(double latitude_deg, double longitude_deg);

GeoPoint make_geo_point(double latitude_deg, double longitude_deg);

double ecef_distance(const EcefPoint& p, const EcefPoint& q);

}  // namespace dronenet

#endif  // DRONENET_GEO_HPP
