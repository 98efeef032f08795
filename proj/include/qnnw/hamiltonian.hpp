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

// Piecewise-constant N-qubit Hamiltonian
//
//   H = sum_i (K_i X_i + eps_i Z_i) + sum_{i<j} zeta_ij Z_i Z_j
//
// with all-to-all pairwise coupling, and its per-chunk propagators. Units are
// dimensionless with hbar = 1.
//
// The chunked (Trotterized) propagator of one chunk is
//
//   U_chunk = [prod_i exp(-i H_i dt)] * [prod_{i<j} exp(-i zeta_ij Z_i Z_j dt)]
//
// so the ZZ block acts first. Single-qubit factors commute with each other, as
// do the ZZ factors, so only the block order matters numerically; qubits and
// pairs are still visited in ascending / lexicographic order so the gate
// compiler reproduces the same sequence.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qnnw/circuit.hpp"
#include "qnnw/linalg.hpp"
#include "qnnw/state.hpp"

namespace qnnw {

using QubitPair = std::pair<std::size_t, std::size_t>;

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Lexicographic position of (i, j), i < j, among all pairs of n qubits.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i >= j || j >= n) throw DimensionError("pair_index: need i < j < n");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::vector<QubitPair> all_pairs(std::size_t n) {
  std::vector<QubitPair> pairs;
  pairs.reserve(pair_count(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

/// Parameters held constant over one time chunk. `zeta` is indexed by
/// pair_index(i, j, n).
struct ChunkParams {
  std::vector<double> K;
  std::vector<double> eps;
  std::vector<double> zeta;

  static ChunkParams uniform(std::size_t n, double k, double e, double z) {
    return {std::vector<double>(n, k), std::vector<double>(n, e),
            std::vector<double>(pair_count(n), z)};
  }

  std::size_t n_qubits() const { return K.size(); }

  bool is_uniform() const {
    auto all_equal = [](const std::vector<double>& v) {
      for (double x : v)
        if (x != v.front()) return false;
      return true;
    };
    return all_equal(K) && all_equal(eps) && all_equal(zeta);
  }

  void validate(std::size_t n) const {
    if (K.size() != n || eps.size() != n || zeta.size() != pair_count(n)) {
      throw DimensionError("ChunkParams: expected " + std::to_string(n) + " K/eps values and " +
                           std::to_string(pair_count(n)) + " couplings");
    }
  }

  friend bool operator==(const ChunkParams&, const ChunkParams&) = default;
};

struct Schedule {
  std::size_t n_qubits{2};
  std::vector<ChunkParams> chunks;
  double total_time{1.0};
  bool symmetric{false};

  double dt() const { return total_time / static_cast<double>(chunks.size()); }

  void validate() const {
    if (n_qubits == 0) throw DimensionError("Schedule: n_qubits must be positive");
    if (chunks.empty()) throw std::invalid_argument("Schedule: at least one chunk is required");
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
      throw std::invalid_argument("Schedule: total_time must be positive");
    }
    for (const auto& c : chunks) {
      c.validate(n_qubits);
      if (symmetric && !c.is_uniform()) {
        throw std::invalid_argument("Schedule: symmetric flag set but parameters differ");
      }
    }
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Symmetric schedule from per-chunk (K, eps, zeta) triples.
inline Schedule symmetric_schedule(std::size_t n, const std::vector<double>& K,
                                   const std::vector<double>& eps,
                                   const std::vector<double>& zeta, double total_time) {
  if (K.size() != eps.size() || K.size() != zeta.size()) {
    throw DimensionError("symmetric_schedule: per-chunk arrays differ in length");
  }
  Schedule s{n, {}, total_time, true};
  for (std::size_t k = 0; k < K.size(); ++k) {
    s.chunks.push_back(ChunkParams::uniform(n, K[k], eps[k], zeta[k]));
  }
  s.validate();
  return s;
}

/// Splits every chunk into `factor` equal chunks with the same parameters.
inline Schedule refine_schedule(const Schedule& s, std::size_t factor) {
  if (factor == 0) throw std::invalid_argument("refine_schedule: factor must be positive");
  Schedule out = s;
  out.chunks.clear();
  for (const auto& c : s.chunks)
    for (std::size_t r = 0; r < factor; ++r) out.chunks.push_back(c);
  return out;
}

inline ComplexMatrix build_hamiltonian(const ChunkParams& p, std::size_t n) {
  p.validate(n);
  const auto dim = static_cast<Eigen::Index>(dimension_of(n));
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (std::size_t q = 0; q < n; ++q) {
    h += embed(p.K[q] * pauli::x() + p.eps[q] * pauli::z(), q, n);
  }
  for (const auto& [i, j] : all_pairs(n)) {
    const double z = p.zeta[pair_index(i, j, n)];
    if (z != 0.0) h.diagonal() += (z * zz_diagonal(i, j, n)).cast<Complex>();
  }
  return h;
}

inline ComplexMatrix exact_chunk_propagator(const ChunkParams& p, std::size_t n, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("exact_chunk_propagator: dt must be positive");
  return hermitian_exponential(build_hamiltonian(p, n), dt);
}

/// exp(-i dt (K X + eps Z)) on one qubit.
inline Matrix2c single_qubit_propagator(double K, double eps, double dt) {
  const double magnitude = std::hypot(K, eps);
  if (magnitude == 0.0) return Matrix2c::Identity();
  return pauli_exponential({K / magnitude, 0.0, eps / magnitude}, dt * magnitude);
}

/// Diagonal of prod_{i<j} exp(-i zeta_ij dt Z_i Z_j).
inline ComplexVector zz_phases(const ChunkParams& p, std::size_t n, double dt) {
  const std::size_t dim = dimension_of(n);
  const auto pairs = all_pairs(n);
  ComplexVector phases(static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    double energy = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      energy += p.zeta[k] * parity_sign(b, pairs[k].first, pairs[k].second, n);
    }
    phases[static_cast<Eigen::Index>(b)] = std::exp(-kI * (energy * dt));
  }
  return phases;
}

inline ComplexMatrix chunked_chunk_propagator(const ChunkParams& p, std::size_t n, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("chunked_chunk_propagator: dt must be positive");
  p.validate(n);
  ComplexMatrix u = zz_phases(p, n, dt).asDiagonal();
  for (std::size_t q = 0; q < n; ++q) {
    u = embed(single_qubit_propagator(p.K[q], p.eps[q], dt), q, n) * u;
  }
  return u;
}

enum class Propagation { Exact, Chunked };

inline std::string_view to_string(Propagation m) {
  return m == Propagation::Exact ? "exact" : "chunked";
}

inline ComplexMatrix chunk_propagator(const ChunkParams& p, std::size_t n, double dt,
                                      Propagation method) {
  return method == Propagation::Exact ? exact_chunk_propagator(p, n, dt)
                                      : chunked_chunk_propagator(p, n, dt);
}

/// Dense propagator of the whole schedule, chunk 0 applied first.
inline ComplexMatrix schedule_propagator(const Schedule& s, Propagation method,
                                         std::size_t cap = kDenseQubitCap) {
  s.validate();
  if (s.n_qubits > cap) {
    throw CapacityError("schedule_propagator: " + std::to_string(s.n_qubits) +
                        " qubits exceeds dense cap " + std::to_string(cap));
  }
  const auto dim = static_cast<Eigen::Index>(dimension_of(s.n_qubits));
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& c : s.chunks) u = chunk_propagator(c, s.n_qubits, s.dt(), method) * u;
  return u;
}

/// Precomputed per-chunk factors of a schedule; evolves many states without
/// rebuilding propagators. Chunked evolution streams 2x2 updates and a
/// diagonal phase instead of multiplying dense matrices.
class ScheduleEvolver {
 public:
  ScheduleEvolver(const Schedule& s, Propagation method) : n_(s.n_qubits), method_(method) {
    s.validate();
    const double dt = s.dt();
    for (const auto& c : s.chunks) {
      if (method == Propagation::Exact) {
        dense_.push_back(exact_chunk_propagator(c, n_, dt));
      } else {
        phases_.push_back(zz_phases(c, n_, dt));
        std::vector<Matrix2c> singles;
        for (std::size_t q = 0; q < n_; ++q) {
          singles.push_back(single_qubit_propagator(c.K[q], c.eps[q], dt));
        }
        singles_.push_back(std::move(singles));
      }
    }
  }

  std::size_t n_qubits() const { return n_; }

  void evolve_in_place(ComplexVector& amps) const {
    if (method_ == Propagation::Exact) {
      for (const auto& u : dense_) amps = u * amps;
      return;
    }
    for (std::size_t k = 0; k < phases_.size(); ++k) {
      amps.array() *= phases_[k].array();
      for (std::size_t q = 0; q < n_; ++q) kernels::apply_1q(amps, n_, q, singles_[k][q]);
    }
  }

  StateVector evolve(StateVector state) const {
    if (state.n_qubits() != n_) throw DimensionError("propagate: state and schedule qubit counts differ");
    evolve_in_place(state.amplitudes_mut());
    return state;
  }

 private:
  std::size_t n_;
  Propagation method_;
  std::vector<ComplexMatrix> dense_;
  std::vector<ComplexVector> phases_;
  std::vector<std::vector<Matrix2c>> singles_;
};

inline StateVector propagate(const StateVector& initial, const Schedule& s, Propagation method) {
  if (initial.n_qubits() != s.n_qubits) {
    throw DimensionError("propagate: state has " + std::to_string(initial.n_qubits()) +
                         " qubits, schedule has " + std::to_string(s.n_qubits));
  }
  return ScheduleEvolver(s, method).evolve(initial);
}

inline DensityMatrix propagate(const DensityMatrix& initial, const Schedule& s, Propagation method) {
  if (initial.n_qubits() != s.n_qubits) {
    throw DimensionError("propagate: density matrix has " + std::to_string(initial.n_qubits()) +
                         " qubits, schedule has " + std::to_string(s.n_qubits));
  }
  s.validate();
  DensityMatrix rho = initial;
  for (const auto& c : s.chunks) rho = rho.evolved(chunk_propagator(c, s.n_qubits, s.dt(), method));
  return rho;
}

}  // namespace qnnw
