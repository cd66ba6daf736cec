/* Copyright 2026 The spingate Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SPINGATE_UNITS_HPP
#define SPINGATE_UNITS_HPP

#include <numbers>

namespace spingate {

// Internal convention: every frequency is an angular frequency in rad/us,
// every time is in us.  Configuration and file formats speak ordinary
// frequencies in MHz; 1 MHz ordinary = 2*pi rad/us angular.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz_to_rad_per_us(double f_mhz) { return kTwoPi * f_mhz; }
constexpr double rad_per_us_to_mhz(double w) { return w / kTwoPi; }

constexpr double ns_to_us(double t_ns) { return t_ns * 1e-3; }
constexpr double us_to_ns(double t_us) { return t_us * 1e3; }

} // namespace spingate

#endif // SPINGATE_UNITS_HPP
