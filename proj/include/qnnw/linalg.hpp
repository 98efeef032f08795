// Copyright 2026 The qnnw Authors
//
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

#pragma once

// Dense complex linear algebra shared by every other module: Pauli matrices,
// axis rotations, the Pauli-exponential identity, Hermitian exponentials and
// Kronecker embedding of one- and two-qubit operators.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <string>
#include <stdexcept>

#include <Eigen/Dense>

#include "qnnw/errors.hpp"

namespace qnnw {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr Complex kI{0.0, 1.0};

/// 17 significant digits: round-trips every double and prints identically
/// on every run.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

enum class Axis { X, Y, Z };

namespace pauli {

inline Matrix2c identity() { return Matrix2c::Identity(); }

inline Matrix2c x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Matrix2c y() {
  Matrix2c m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

inline Matrix2c z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

inline Matrix2c of(Axis axis) {
  switch (axis) {
    case Axis::X:
      return x();
    case Axis::Y:
      return y();
    case Axis::Z:
      return z();
  }
  throw std::invalid_argument("unknown axis");
}

}  // namespace pauli

/// Axis rotation in the half-angle convention, R(theta) = exp(-i theta/2 P).
inline Matrix2c rotation_matrix(Axis axis, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix2c m;
  switch (axis) {
    case Axis::X:
      m << c, -kI * s, -kI * s, c;
      break;
    case Axis::Y:
      m << c, -s, s, c;
      break;
    case Axis::Z:
      m << std::exp(-kI * (theta / 2.0)), 0.0, 0.0, std::exp(kI * (theta / 2.0));
      break;
  }
  return m;
}

/// exp(-i alpha (n.sigma)) = I cos(alpha) - i (n.sigma) sin(alpha), full-angle
/// convention. `n_hat` must be a unit vector.
inline Matrix2c pauli_exponential(const std::array<double, 3>& n_hat, double alpha) {
  const double norm =
      std::sqrt(n_hat[0] * n_hat[0] + n_hat[1] * n_hat[1] + n_hat[2] * n_hat[2]);
  if (!(std::abs(norm - 1.0) <= 1e-10)) {
    throw std::invalid_argument("pauli_exponential: axis is not a unit vector");
  }
  const Matrix2c n_sigma = n_hat[0] * pauli::x() + n_hat[1] * pauli::y() + n_hat[2] * pauli::z();
  return Matrix2c::Identity() * std::cos(alpha) - kI * std::sin(alpha) * n_sigma;
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-12) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm() < tol;
}

inline bool is_hermitian(const ComplexMatrix& h, double tol = 1e-12) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).norm() < tol;
}

/// exp(-i H t) for Hermitian H, through its eigendecomposition.
inline ComplexMatrix hermitian_exponential(const ComplexMatrix& h, double t) {
  if (h.rows() != h.cols()) {
    throw DimensionError("hermitian_exponential: matrix is not square");
  }
  if (!h.allFinite() || !std::isfinite(t)) {
    throw std::domain_error("hermitian_exponential: non-finite input");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_exponential: eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  ComplexVector phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    phases[k] = std::exp(-kI * (evals[k] * t));
  }
  const ComplexMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

inline std::size_t dimension_of(std::size_t n_qubits) { return std::size_t{1} << n_qubits; }

// Qubit 0 is the most significant bit of a basis index.
inline std::size_t qubit_mask(std::size_t qubit, std::size_t n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

inline int parity_sign(std::size_t basis, std::size_t i, std::size_t j, std::size_t n_qubits) {
  const bool bi = (basis & qubit_mask(i, n_qubits)) != 0;
  const bool bj = (basis & qubit_mask(j, n_qubits)) != 0;
  return (bi != bj) ? -1 : 1;
}

/// Single-qubit operator acting on `qubit`, identity elsewhere.
inline ComplexMatrix embed(const Matrix2c& op, std::size_t qubit, std::size_t n_qubits) {
  const std::size_t dim = dimension_of(n_qubits);
  const std::size_t mask = qubit_mask(qubit, n_qubits);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const int b = (col & mask) ? 1 : 0;
    for (int a = 0; a < 2; ++a) {
      const std::size_t row = a ? (col | mask) : (col & ~mask);
      out(row, col) += op(a, b);
    }
  }
  return out;
}

/// Diagonal of Z_i Z_j over the computational basis.
inline Eigen::VectorXd zz_diagonal(std::size_t i, std::size_t j, std::size_t n_qubits) {
  const std::size_t dim = dimension_of(n_qubits);
  Eigen::VectorXd d(dim);
  for (std::size_t b = 0; b < dim; ++b) d[b] = parity_sign(b, i, j, n_qubits);
  return d;
}

}  // namespace qnnw
