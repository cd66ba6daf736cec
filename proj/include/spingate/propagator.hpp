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

#ifndef SPINGATE_PROPAGATOR_HPP
#define SPINGATE_PROPAGATOR_HPP

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "spingate/linalg.hpp"
#include "spingate/noise_ou.hpp"
#include "spingate/spin_model.hpp"
#include "spingate/units.hpp"

namespace spingate {

// Piecewise-constant control: Omega_MW and phi at each step midpoint,
// fixed detuning Delta.  All post-envelope, post-clamp.
struct ControlWaveform {
  double dt = 1e-3;               // us, default 1 ns
  std::vector<double> amplitudes; // rad/us
  std::vector<double> phases;     // rad
  double detuning = 0.0;          // rad/us

  std::size_t steps() const { return amplitudes.size(); }
  double duration() const { return static_cast<double>(steps()) * dt; }

  void validate(double omega_max) const {
    if (amplitudes.empty() || amplitudes.size() != phases.size()) {
      throw std::invalid_argument(
          "ControlWaveform: amplitudes and phases must have equal length >= "
          "1");
    }
    if (!(dt > 0.0)) {
      throw std::invalid_argument("ControlWaveform: dt must be > 0");
    }
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
      if (std::abs(amplitudes[k]) > omega_max * (1.0 + 1e-12)) {
        throw std::invalid_argument(
            "ControlWaveform: |amplitude| " + std::to_string(amplitudes[k]) +
            " at step " + std::to_string(k) + " exceeds omega_max " +
            std::to_string(omega_max));
      }
    }
  }

  static ControlWaveform create(double dt, std::vector<double> amplitudes,
                                std::vector<double> phases, double detuning,
                                double omega_max) {
    ControlWaveform w;
    w.dt = dt;
    w.amplitudes = std::move(amplitudes);
    w.phases = std::move(phases);
    w.detuning = detuning;
    w.validate(omega_max);
    return w;
  }
};

enum class Scheme {
  frozen_exact,       // exact exponential of the time-frozen H per step
  split_drift_control // first-order drift/(control+noise) splitting
};

namespace detail {

// Drift + control matrix at every step midpoint.  Shared by all noise
// realizations of a pulse, so it is built once per candidate waveform.
inline std::vector<Matrix4c> step_bases(const SystemParams& params,
                                        const ControlWaveform& wf) {
  const Matrix4c drift = drift_hamiltonian(params).matrix;
  const auto& op = spin_operators();
  std::vector<Matrix4c> base(wf.steps());
  for (std::size_t k = 0; k < wf.steps(); ++k) {
    const double t = (static_cast<double>(k) + 0.5) * wf.dt;
    const double arg = wf.detuning * t - wf.phases[k];
    base[k] = drift + wf.amplitudes[k] * (std::cos(arg) * op.sx -
                                          std::sin(arg) * op.sy);
  }
  return base;
}

inline void add_sz(Matrix4c& h, double beta) {
  const double half = 0.5 * beta;
  h(0, 0) += half;
  h(1, 1) += half;
  h(2, 2) -= half;
  h(3, 3) -= half;
}

inline Matrix4c propagate_over_base(const std::vector<Matrix4c>& base,
                                    double dt, const double* beta) {
  Matrix4c u = Matrix4c::Identity();
  Matrix4c h;
  for (std::size_t k = 0; k < base.size(); ++k) {
    h = base[k];
    if (beta) add_sz(h, beta[k]);
    u = (expm_step(h, dt) * u).eval();
  }
  return u;
}

inline void check_noise_grid(const ControlWaveform& wf,
                             const NoiseTrajectory& noise) {
  if (noise.values.size() != wf.steps() || noise.dt != wf.dt) {
    throw std::invalid_argument(
        "propagate: noise trajectory grid (" +
        std::to_string(noise.values.size()) + " steps, dt " +
        std::to_string(noise.dt) + ") does not match waveform (" +
        std::to_string(wf.steps()) + " steps, dt " + std::to_string(wf.dt) +
        ")");
  }
}

} // namespace detail

// Time-ordered product of step exponentials,
//   U = prod_k exp(-i H_k dt),  H_k frozen at the step midpoint.
inline GateMatrix propagate(const SystemParams& params,
                            const ControlWaveform& wf,
                            const NoiseTrajectory* noise = nullptr,
                            Scheme scheme = Scheme::frozen_exact) {
  wf.validate(params.omega_max);
  if (noise) detail::check_noise_grid(wf, *noise);
  const std::vector<Matrix4c> base = detail::step_bases(params, wf);
  if (scheme == Scheme::frozen_exact) {
    return detail::propagate_over_base(base, wf.dt,
                                       noise ? noise->values.data() : nullptr);
  }
  // splitting cross-check route: exp(-i H_drift dt) exp(-i (H_c + H_n) dt)
  const Matrix4c drift = drift_hamiltonian(params).matrix;
  const Matrix4c u_drift = expm_step(drift, wf.dt);
  Matrix4c u = Matrix4c::Identity();
  for (std::size_t k = 0; k < wf.steps(); ++k) {
    Matrix4c h = base[k] - drift;
    if (noise) detail::add_sz(h, noise->values[k]);
    u = (u_drift * expm_step(h, wf.dt) * u).eval();
  }
  return u;
}

// One unitary per seed, seed-ordered, identical for any thread count.
inline std::vector<GateMatrix> propagate_ensemble(
    const SystemParams& params, const ControlWaveform& wf,
    const std::vector<std::uint64_t>& seeds, const OuParams& ou,
    unsigned n_threads = 0) {
  if (seeds.empty()) {
    throw std::invalid_argument("propagate_ensemble: seeds must be non-empty");
  }
  wf.validate(params.omega_max);
  ou.validate();
  const std::vector<Matrix4c> base = detail::step_bases(params, wf);
  std::vector<GateMatrix> out(seeds.size());
  if (n_threads == 0) n_threads = std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads,
                                 static_cast<unsigned>(seeds.size()));

  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const NoiseTrajectory traj =
          sample_trajectory(ou, wf.steps(), wf.dt, seeds[i]);
      out[i] = detail::propagate_over_base(base, wf.dt, traj.values.data());
    }
  };
  if (n_threads == 1) {
    worker(0, seeds.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (seeds.size() + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(seeds.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

// State evolution with a per-step observer; observer(k, psi) sees the state
// after step k.  Uses the Taylor expansion applied directly to the vector.
inline Vector4c evolve_state(
    const SystemParams& params, const ControlWaveform& wf,
    const NoiseTrajectory* noise, Vector4c psi,
    const std::function<void(std::size_t, const Vector4c&)>& observer = {}) {
  wf.validate(params.omega_max);
  if (noise) detail::check_noise_grid(wf, *noise);
  const std::vector<Matrix4c> base = detail::step_bases(params, wf);
  for (std::size_t k = 0; k < base.size(); ++k) {
    Matrix4c h = base[k];
    if (noise) detail::add_sz(h, noise->values[k]);
    const Matrix4c a = cplx(0.0, -wf.dt) * h;
    Vector4c term = psi;
    Vector4c acc = psi;
    for (int n = 1; n <= 11; ++n) {
      term = (a * term).eval() / static_cast<double>(n);
      acc += term;
    }
    psi = acc;
    if (observer) observer(k, psi);
  }
  return psi;
}

// reduced single-spin populations by partial trace
inline double population_electron_up(const Vector4c& psi) {
  return std::norm(psi(0)) + std::norm(psi(1));
}
inline double population_nucleus_up(const Vector4c& psi) {
  return std::norm(psi(0)) + std::norm(psi(2));
}

// ---------------------------------------------------------------------
// Waveform file format: comment header carrying dt and detuning, one
// header line, then columns t_ns omega_mhz phi_rad.  Doubles are printed
// with 17 significant digits so a parse-print cycle is byte-stable.
//
// The amplitude column is an ordinary frequency in MHz while the object
// stores rad/us; a rounded x2pi conversion would not be bit-exact.  The
// writer therefore emits a deterministic exact preimage of the stored
// amplitude, and amplitudes are quantized onto the image of the MHz->rad/us
// map wherever waveforms are built, so write/read cycles reproduce the
// object bit-for-bit.
// ---------------------------------------------------------------------

namespace detail {

// Deterministic m with fl(m * 2pi) == amp when one exists near amp/2pi.
inline double mhz_preimage(double amp) {
  const double m0 = rad_per_us_to_mhz(amp);
  double m = m0;
  for (int k = 0; k < 2; ++k) {
    if (mhz_to_rad_per_us(m) == amp) return m;
    m = std::nextafter(m, -std::numeric_limits<double>::infinity());
  }
  m = m0;
  for (int k = 0; k < 2; ++k) {
    m = std::nextafter(m, std::numeric_limits<double>::infinity());
    if (mhz_to_rad_per_us(m) == amp) return m;
  }
  return m0;
}

// Nearest representable amplitude that survives the MHz column exactly.
inline double quantize_amplitude(double amp) {
  return mhz_to_rad_per_us(mhz_preimage(amp));
}

// Largest quantized amplitude <= bound; clamp limit for realized pulses.
inline double quantized_floor(double bound) {
  double m = rad_per_us_to_mhz(bound);
  while (mhz_to_rad_per_us(m) > bound) {
    m = std::nextafter(m, -std::numeric_limits<double>::infinity());
  }
  return mhz_to_rad_per_us(m);
}

} // namespace detail

inline void write_waveform(std::ostream& os, const ControlWaveform& wf) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# spingate waveform dt_us=%.17g "
                                 "detuning_rad_per_us=%.17g steps=%zu\n",
                wf.dt, wf.detuning, wf.steps());
  os << buf << "t_ns omega_mhz phi_rad\n";
  for (std::size_t k = 0; k < wf.steps(); ++k) {
    const double t_ns = us_to_ns((static_cast<double>(k) + 0.5) * wf.dt);
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", t_ns,
                  rad_per_us_to_mhz(wf.amplitudes[k]), wf.phases[k]);
    os << buf;
  }
}

inline ControlWaveform read_waveform(std::istream& is) {
  ControlWaveform wf;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# spingate waveform", 0) != 0) {
    throw std::runtime_error("read_waveform: missing waveform header comment");
  }
  std::size_t steps = 0;
  {
    std::istringstream hs(line.substr(line.find("dt_us=")));
    std::string token;
    while (hs >> token) {
      if (token.rfind("dt_us=", 0) == 0) {
        wf.dt = std::stod(token.substr(6));
      } else if (token.rfind("detuning_rad_per_us=", 0) == 0) {
        wf.detuning = std::stod(token.substr(20));
      } else if (token.rfind("steps=", 0) == 0) {
        steps = std::stoul(token.substr(6));
      }
    }
  }
  if (!std::getline(is, line)) {
    throw std::runtime_error("read_waveform: missing column header");
  }
  wf.amplitudes.reserve(steps);
  wf.phases.reserve(steps);
  double t_ns = 0.0, omega_mhz = 0.0, phi = 0.0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!(ls >> t_ns >> omega_mhz >> phi)) {
      throw std::runtime_error("read_waveform: malformed data line: " + line);
    }
    wf.amplitudes.push_back(mhz_to_rad_per_us(omega_mhz));
    wf.phases.push_back(phi);
  }
  if (steps != 0 && wf.amplitudes.size() != steps) {
    throw std::runtime_error("read_waveform: step count mismatch, header " +
                             std::to_string(steps) + " vs data " +
                             std::to_string(wf.amplitudes.size()));
  }
  if (wf.amplitudes.empty()) {
    throw std::runtime_error("read_waveform: no data rows");
  }
  return wf;
}

} // namespace spingate

#endif // SPINGATE_PROPAGATOR_HPP
