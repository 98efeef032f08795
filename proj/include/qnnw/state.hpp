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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "qnnw/linalg.hpp"

namespace qnnw {

inline constexpr std::size_t kMaxStateQubits = 24;

/// Normalized pure state of `n_qubits` qubits, 2^n amplitudes.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    check_qubits(n_qubits);
    amplitudes_ = ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(n_qubits)));
    amplitudes_[0] = 1.0;
  }

  /// Takes amplitudes as given; they must already be normalized within `tol`.
  StateVector(std::size_t n_qubits, ComplexVector amplitudes, double tol = 1e-10)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubits(n_qubits);
    if (static_cast<std::size_t>(amplitudes_.size()) != dimension_of(n_qubits)) {
      throw DimensionError("StateVector: expected " + std::to_string(dimension_of(n_qubits)) +
                           " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    if (!amplitudes_.allFinite() || std::abs(amplitudes_.squaredNorm() - 1.0) > tol) {
      throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
  }

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static StateVector normalized(std::size_t n_qubits, ComplexVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw std::invalid_argument("StateVector: cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return StateVector(n_qubits, std::move(amplitudes));
  }

  static StateVector basis(std::size_t n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) throw std::out_of_range("StateVector::basis: index out of range");
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
    return s;
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

  // Kernels that update amplitudes in place (gate application, propagation)
  // keep the norm invariant themselves.
  ComplexVector& amplitudes_mut() { return amplitudes_; }

 private:
  static void check_qubits(std::size_t n) {
    if (n == 0 || n > kMaxStateQubits) {
      throw DimensionError("StateVector: qubit count must be in [1, " +
                           std::to_string(kMaxStateQubits) + "]");
    }
  }

  std::size_t n_qubits_;
  ComplexVector amplitudes_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(const StateVector& pure)
      : n_qubits_(pure.n_qubits()), rho_(pure.amplitudes() * pure.amplitudes().adjoint()) {}

  /// Validates Hermiticity, unit trace and positive semidefiniteness within `tol`.
  DensityMatrix(std::size_t n_qubits, ComplexMatrix rho, double tol = 1e-10)
      : n_qubits_(n_qubits), rho_(std::move(rho)) {
    const auto dim = static_cast<Eigen::Index>(dimension_of(n_qubits));
    if (rho_.rows() != dim || rho_.cols() != dim) {
      throw DimensionError("DensityMatrix: shape does not match qubit count");
    }
    if (!is_hermitian(rho_, tol)) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(rho_.trace() - Complex{1.0, 0.0}) > tol) {
      throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }
  double purity() const { return (rho_ * rho_).trace().real(); }

  /// U rho U^dagger.
  DensityMatrix evolved(const ComplexMatrix& u) const {
    if (u.rows() != rho_.rows() || u.cols() != rho_.cols()) {
      throw DimensionError("DensityMatrix::evolved: propagator shape mismatch");
    }
    DensityMatrix out = *this;
    out.rho_ = u * rho_ * u.adjoint();
    return out;
  }

 private:
  std::size_t n_qubits_;
  ComplexMatrix rho_;
};

namespace detail {

inline void check_pair(std::size_t i, std::size_t j, std::size_t n_qubits) {
  if (i == j) throw std::invalid_argument("qubit pair must be two distinct qubits");
  if (i >= n_qubits || j >= n_qubits) {
    throw DimensionError("qubit pair (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range for " + std::to_string(n_qubits) + " qubits");
  }
}

}  // namespace detail

/// <Z_i Z_j> as a parity-weighted sum of basis probabilities.
inline double expectation_zz(const StateVector& state, std::size_t i, std::size_t j) {
  detail::check_pair(i, j, state.n_qubits());
  const auto& amps = state.amplitudes();
  double acc = 0.0;
  for (std::size_t b = 0; b < state.dim(); ++b) {
    acc += std::norm(amps[static_cast<Eigen::Index>(b)]) * parity_sign(b, i, j, state.n_qubits());
  }
  return acc;
}

/// Tr[rho Z_i Z_j]; Z_i Z_j is diagonal so only the diagonal of rho enters.
inline double expectation_zz(const DensityMatrix& rho, std::size_t i, std::size_t j) {
  detail::check_pair(i, j, rho.n_qubits());
  const auto& m = rho.matrix();
  double acc = 0.0;
  for (std::size_t b = 0; b < rho.dim(); ++b) {
    const auto k = static_cast<Eigen::Index>(b);
    acc += m(k, k).real() * parity_sign(b, i, j, rho.n_qubits());
  }
  return acc;
}

}  // namespace qnnw
