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

#ifndef SPINGATE_NOISE_OU_HPP
#define SPINGATE_NOISE_OU_HPP

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spingate/rng.hpp"
#include "spingate/units.hpp"

namespace spingate {

// Ornstein-Uhlenbeck dephasing process: stationary std sigma (rad/us),
// correlation time t_c (us).
struct OuParams {
  double sigma = 0.0;
  double t_c = 1.0;

  void validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw std::domain_error("OuParams: sigma must be >= 0, got " +
                              std::to_string(sigma));
    }
    if (!(t_c > 0.0)) {
      throw std::domain_error("OuParams: t_c must be > 0, got " +
                              std::to_string(t_c));
    }
  }
};

// sigma and t_c that reproduce measured T2* and T2:
//   sigma = sqrt(2)/(2 T2*),  t_c = T2^3 / (6 T2*^2)
inline OuParams ou_params_from_coherence(double t2_star_us, double t2_us) {
  if (!(t2_star_us > 0.0)) {
    throw std::domain_error("ou_params_from_coherence: T2* must be > 0, got " +
                            std::to_string(t2_star_us));
  }
  if (!(t2_us > 0.0)) {
    throw std::domain_error("ou_params_from_coherence: T2 must be > 0, got " +
                            std::to_string(t2_us));
  }
  OuParams p;
  p.sigma = std::sqrt(2.0) / (2.0 * t2_star_us);
  p.t_c = (t2_us * t2_us * t2_us) / (6.0 * t2_star_us * t2_star_us);
  return p;
}

// Exact discrete update:
//   beta' = exp(-dt/t_c) beta + sigma sqrt(1 - exp(-2 dt/t_c)) xi
inline double ou_step(double beta, double dt, const OuParams& p,
                      double gaussian_draw) {
  if (!(dt > 0.0)) {
    throw std::domain_error("ou_step: dt must be > 0, got " +
                            std::to_string(dt));
  }
  const double decay = std::exp(-dt / p.t_c);
  const double diffusion = p.sigma * std::sqrt(-std::expm1(-2.0 * dt / p.t_c));
  return decay * beta + diffusion * gaussian_draw;
}

// One realization of beta on the propagation grid, piecewise constant over
// each dt.  Regenerating with the same (params, n, dt, seed) is bit-exact.
struct NoiseTrajectory {
  std::uint64_t seed = 0;
  std::vector<double> values; // rad/us, one entry per grid step
  double dt = 1e-3;           // us
};

inline NoiseTrajectory sample_trajectory(const OuParams& p,
                                         std::size_t n_steps, double dt,
                                         std::uint64_t seed) {
  p.validate();
  if (n_steps < 1) {
    throw std::domain_error("sample_trajectory: n_steps must be >= 1");
  }
  NoiseTrajectory traj;
  traj.seed = seed;
  traj.dt = dt;
  traj.values.resize(n_steps);
  SplitMix64 rng(seed);
  double beta = p.sigma * rng.next_gaussian(); // stationary N(0, sigma^2)
  traj.values[0] = beta;
  for (std::size_t k = 1; k < n_steps; ++k) {
    beta = ou_step(beta, dt, p, rng.next_gaussian());
    traj.values[k] = beta;
  }
  return traj;
}

// Columnar text dump: header line then t_ns, beta_rad_per_us.
inline void write_trajectory(std::ostream& os, const NoiseTrajectory& traj) {
  os << "t_ns beta_rad_per_us\n";
  char buf[64];
  for (std::size_t k = 0; k < traj.values.size(); ++k) {
    const double t_ns = us_to_ns((static_cast<double>(k) + 0.5) * traj.dt);
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", t_ns, traj.values[k]);
    os << buf;
  }
}

} // namespace spingate

#endif // SPINGATE_NOISE_OU_HPP
