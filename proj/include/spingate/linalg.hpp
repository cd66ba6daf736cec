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

#ifndef SPINGATE_LINALG_HPP
#define SPINGATE_LINALG_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace spingate {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// A propagation or target unitary on the two-qubit space.
using GateMatrix = Matrix4c;

inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  out.block<2, 2>(0, 0) = a(0, 0) * b;
  out.block<2, 2>(0, 2) = a(0, 1) * b;
  out.block<2, 2>(2, 0) = a(1, 0) * b;
  out.block<2, 2>(2, 2) = a(1, 1) * b;
  return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

// max-norm defect of U^dag U - 1
template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Mat = typename Derived::PlainObject;
  const Mat d = u.adjoint() * u -
                Mat::Identity(u.rows(), u.cols());
  return max_abs(d);
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& h) {
  using Mat = typename Derived::PlainObject;
  const Mat d = h - h.adjoint();
  return max_abs(d);
}

inline bool is_unitary(const Matrix4c& u, double tol = 1e-6) {
  return unitarity_defect(u) <= tol;
}

inline void require_unitary(const Matrix4c& u, double tol,
                            const char* what) {
  const double defect = unitarity_defect(u);
  if (!(defect <= tol)) {
    throw std::invalid_argument(std::string(what) +
                                ": matrix is not unitary, defect " +
                                std::to_string(defect));
  }
}

namespace detail {

// Paterson-Stockmeyer evaluation of the degree-11 Taylor polynomial of
// exp(A).  For ||A|| <= 0.35 the truncation tail is below 1e-14, well
// inside the 1e-12 per-step unitarity target of the propagator.
inline Matrix4c taylor11(const Matrix4c& a) {
  static constexpr double inv_fact[12] = {
      1.0,
      1.0,
      1.0 / 2,
      1.0 / 6,
      1.0 / 24,
      1.0 / 120,
      1.0 / 720,
      1.0 / 5040,
      1.0 / 40320,
      1.0 / 362880,
      1.0 / 3628800,
      1.0 / 39916800};
  const Matrix4c a2 = a * a;
  const Matrix4c a3 = a2 * a;
  const Matrix4c c0 = Matrix4c::Identity() + a + inv_fact[2] * a2;
  Matrix4c acc = inv_fact[9] * Matrix4c::Identity() + inv_fact[10] * a +
                 inv_fact[11] * a2;
  acc = inv_fact[6] * Matrix4c::Identity() + inv_fact[7] * a +
        inv_fact[8] * a2 + a3 * acc;
  acc = inv_fact[3] * Matrix4c::Identity() + inv_fact[4] * a +
        inv_fact[5] * a2 + a3 * acc;
  return c0 + a3 * acc;
}

} // namespace detail

// exp(-i * H * dt) for Hermitian H.  Scaled Taylor evaluation; exact for
// the frozen step Hamiltonian to ~1e-14.  The propagator's inner loop sits
// on this, so it avoids the eigensolver entirely.
inline Matrix4c expm_step(const Matrix4c& h, double dt) {
  Matrix4c a = cplx(0.0, -dt) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  if (!std::isfinite(norm)) {
    throw std::domain_error("expm_step: non-finite Hamiltonian entries");
  }
  int squarings = 0;
  if (norm > 0.35) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.35)));
    a *= std::ldexp(1.0, -squarings);
  }
  Matrix4c e = detail::taylor11(a);
  for (int s = 0; s < squarings; ++s) e = (e * e).eval();
  return e;
}

// Same operator through the eigendecomposition of H; reference route for
// tests and non-hot paths.
inline Matrix4c expm_hermitian_eig(const Matrix4c& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  if (es.info() != Eigen::Success) {
    throw std::domain_error("expm_hermitian_eig: eigensolver failed");
  }
  const Eigen::Vector4d ev = es.eigenvalues();
  Vector4c phases;
  for (int i = 0; i < 4; ++i) {
    phases(i) = std::exp(cplx(0.0, -ev(i) * dt));
  }
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

// Nearest unitary in Frobenius norm (polar factor W V^dag of the SVD).
template <typename Mat>
Mat nearest_unitary(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

} // namespace spingate

#endif // SPINGATE_LINALG_HPP
