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

#ifndef SPINGATE_SPIN_MODEL_HPP
#define SPINGATE_SPIN_MODEL_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spingate/linalg.hpp"
#include "spingate/units.hpp"

namespace spingate {

// Physical constants of the driven electron-nuclear pair.  All angular
// frequencies, rad/us.  Basis ordering throughout: {uu, ud, du, dd} with
// the electron first and u meaning m = +1/2, so S_z = diag(.5,.5,-.5,-.5).
struct SystemParams {
  double omega_e = mhz_to_rad_per_us(3000.0); // electron Zeeman splitting
  double omega_i = mhz_to_rad_per_us(1.04);   // nuclear Larmor splitting
  double a_zz = mhz_to_rad_per_us(2.86234);   // longitudinal hyperfine
  double a_zx = mhz_to_rad_per_us(0.60281);   // transverse hyperfine
  double omega_max = mhz_to_rad_per_us(15.0); // drive amplitude bound

  void validate() const {
    if (!std::isfinite(omega_e) || !std::isfinite(omega_i) ||
        !std::isfinite(a_zz) || !std::isfinite(a_zx) ||
        !std::isfinite(omega_max)) {
      throw std::invalid_argument("SystemParams: non-finite field");
    }
    if (!(omega_max > 0.0)) {
      throw std::invalid_argument("SystemParams: omega_max must be > 0, got " +
                                  std::to_string(omega_max));
    }
  }
};

enum class TermLabel { drift, control, noise };

struct HamiltonianTerm {
  Matrix4c matrix;
  TermLabel label;
};

// Pauli matrices on one spin-1/2
inline const Matrix2c& pauli_x() {
  static const Matrix2c m = (Matrix2c() << 0, 1, 1, 0).finished();
  return m;
}
inline const Matrix2c& pauli_y() {
  static const Matrix2c m =
      (Matrix2c() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  return m;
}
inline const Matrix2c& pauli_z() {
  static const Matrix2c m = (Matrix2c() << 1, 0, 0, -1).finished();
  return m;
}

struct SpinOperators {
  Matrix4c sx, sy, sz; // electron,  S_a = (1/2) sigma_a x 1
  Matrix4c ix, iy, iz; // nucleus,   I_a = (1/2) 1 x sigma_a
};

inline const SpinOperators& spin_operators() {
  static const SpinOperators ops = [] {
    SpinOperators o;
    const Matrix2c id = Matrix2c::Identity();
    o.sx = 0.5 * kron(pauli_x(), id);
    o.sy = 0.5 * kron(pauli_y(), id);
    o.sz = 0.5 * kron(pauli_z(), id);
    o.ix = 0.5 * kron(id, pauli_x());
    o.iy = 0.5 * kron(id, pauli_y());
    o.iz = 0.5 * kron(id, pauli_z());
    return o;
  }();
  return ops;
}

// Static Hamiltonian in the electron rotating frame: the electron Zeeman
// term cancels there, leaving -w_I I_z + A_zz S_z I_z + A_zx S_z I_x.
inline HamiltonianTerm drift_hamiltonian(const SystemParams& p) {
  p.validate();
  const auto& op = spin_operators();
  Matrix4c h = -p.omega_i * op.iz + p.a_zz * (op.sz * op.iz).eval() +
               p.a_zx * (op.sz * op.ix).eval();
  return {h, TermLabel::drift};
}

// Lab-frame static Hamiltonian, electron Zeeman term included.  Used only
// to locate transition frequencies.
inline Matrix4c static_hamiltonian_lab(const SystemParams& p) {
  const auto& op = spin_operators();
  return (-p.omega_e * op.sz + drift_hamiltonian(p).matrix).eval();
}

// Rotating-frame drive at one instant:
//   Omega_MW [cos(Delta t - phi) S_x - sin(Delta t - phi) S_y]
inline HamiltonianTerm control_hamiltonian(const SystemParams& p,
                                           double amplitude, double phase,
                                           double detuning, double t) {
  if (std::abs(amplitude) > p.omega_max * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "control_hamiltonian: |amplitude| = " + std::to_string(amplitude) +
        " rad/us exceeds omega_max = " + std::to_string(p.omega_max));
  }
  const auto& op = spin_operators();
  const double arg = detuning * t - phase;
  Matrix4c h = amplitude * (std::cos(arg) * op.sx - std::sin(arg) * op.sy);
  return {h, TermLabel::control};
}

// Dephasing term beta(t) S_z for one noise sample.
inline HamiltonianTerm noise_hamiltonian(double beta) {
  return {(beta * spin_operators().sz).eval(), TermLabel::noise};
}

enum class Transition {
  electron_flip_n_up, // |du> <-> |uu>, carrier for the CNOTs and Hadamards
  flip_flop           // |ud> <-> |du>, carrier for the SWAP
};

namespace detail {

inline int product_state_index(int electron_up, int nucleus_up) {
  return (electron_up ? 0 : 2) + (nucleus_up ? 0 : 1);
}

// Pick the eigenvector of maximal overlap with basis state `index`.
// Throws when the two best overlaps tie within 1e-9 (degenerate labeling).
inline int identify_eigenstate(const Eigen::Matrix4cd& vectors, int index) {
  std::array<double, 4> overlap{};
  for (int j = 0; j < 4; ++j) {
    overlap[j] = std::norm(vectors(index, j));
  }
  int best = 0, second = 1;
  if (overlap[1] > overlap[0]) std::swap(best, second);
  for (int j = 2; j < 4; ++j) {
    if (overlap[j] > overlap[best]) {
      second = best;
      best = j;
    } else if (overlap[j] > overlap[second]) {
      second = j;
    }
  }
  if (overlap[best] - overlap[second] < 1e-9) {
    throw std::domain_error(
        "transition_frequency: ambiguous eigenstate identification for basis "
        "state " +
        std::to_string(index) + " (degenerate overlaps)");
  }
  return best;
}

} // namespace detail

// Lab-frame transition (angular) frequency between the two named product
// states; the drive detuning is then omega_d - omega_e.
inline double transition_frequency(const SystemParams& p, Transition tr) {
  p.validate();
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(static_hamiltonian_lab(p));
  if (es.info() != Eigen::Success) {
    throw std::domain_error("transition_frequency: eigensolver failed");
  }
  int upper = 0, lower = 0;
  switch (tr) {
    case Transition::electron_flip_n_up:
      upper = detail::product_state_index(0, 1); // |du>
      lower = detail::product_state_index(1, 1); // |uu>
      break;
    case Transition::flip_flop:
      upper = detail::product_state_index(0, 1); // |du>
      lower = detail::product_state_index(1, 0); // |ud>
      break;
  }
  const int iu = detail::identify_eigenstate(es.eigenvectors(), upper);
  const int il = detail::identify_eigenstate(es.eigenvectors(), lower);
  return es.eigenvalues()(iu) - es.eigenvalues()(il);
}

inline double transition_detuning(const SystemParams& p, Transition tr) {
  return transition_frequency(p, tr) - p.omega_e;
}

} // namespace spingate

#endif // SPINGATE_SPIN_MODEL_HPP
