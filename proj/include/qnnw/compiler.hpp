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

// Compiles a piecewise-constant schedule into Ry / Rz / CNOT gates.
//
// Single-qubit term of one chunk:
//   exp(-i dt (K X + eps Z)) = Ry(beta) Rz(2 dt |(K, eps)|) Ry(-beta),
//   beta = atan2(K, eps)
// Rz takes a half angle, so the rotation magnitude dt |(K, eps)| enters the
// gate doubled.
//
// Coupling term of one chunk:
//   exp(-i zeta dt Z_i Z_j) = CNOT(i,j) Rz_j(2 zeta dt) CNOT(i,j)

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qnnw/circuit.hpp"
#include "qnnw/hamiltonian.hpp"

namespace qnnw {

inline constexpr double kElisionThreshold = 1e-15;

struct RotationAngles {
  double beta{0.0};        // mixing angle, (-pi, pi]
  double alpha_gate{0.0};  // Rz argument, >= 0
  bool identity{false};    // K = eps = 0
};

inline RotationAngles extract_rotation_angles(double K, double eps, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("extract_rotation_angles: dt must be positive");
  const double magnitude = std::hypot(K, eps);
  if (magnitude == 0.0) return {0.0, 0.0, true};
  double beta = std::atan2(K, eps);
  if (beta <= -std::numbers::pi) beta = std::numbers::pi;
  return {beta, 2.0 * dt * magnitude, false};
}

/// Per-chunk circuit weights: zz = zeta dt per pair; beta and alpha =
/// dt |(K, eps)| per qubit (alpha before the factor 2 that the Rz gate takes).
struct ChunkWeights {
  std::vector<double> zz;
  std::vector<double> beta;
  std::vector<double> alpha;
};

inline std::vector<ChunkWeights> chunk_weights(const Schedule& s) {
  s.validate();
  std::vector<ChunkWeights> out;
  const double dt = s.dt();
  for (const auto& c : s.chunks) {
    ChunkWeights w;
    for (double z : c.zeta) w.zz.push_back(z * dt);
    for (std::size_t q = 0; q < s.n_qubits; ++q) {
      const auto a = extract_rotation_angles(c.K[q], c.eps[q], dt);
      w.beta.push_back(a.beta);
      w.alpha.push_back(a.alpha_gate / 2.0);
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// Gates in application order: Ry(-beta), Rz(alpha_gate), Ry(beta).
inline std::vector<GateOp> compile_single_qubit(double K, double eps, double dt,
                                                std::size_t qubit) {
  const auto a = extract_rotation_angles(K, eps, dt);
  if (a.identity) return {};
  return {GateOp::ry(qubit, -a.beta), GateOp::rz(qubit, a.alpha_gate), GateOp::ry(qubit, a.beta)};
}

inline std::vector<GateOp> compile_zz(double zeta, double dt, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("compile_zz: qubits must differ");
  if (zeta == 0.0) return {};
  return {GateOp::cnot(i, j), GateOp::rz(j, 2.0 * zeta * dt), GateOp::cnot(i, j)};
}

struct CompileOptions {
  bool elide{true};  // drop rotations with |angle| < kElisionThreshold
};

inline Circuit compile_schedule(const Schedule& s, CompileOptions options = {}) {
  s.validate();
  Circuit circuit(s.n_qubits);
  const double dt = s.dt();
  auto emit = [&](const std::vector<GateOp>& gates) {
    for (const auto& g : gates) {
      if (options.elide && g.is_rotation() && std::abs(g.angle) < kElisionThreshold) continue;
      circuit.push(g);
    }
  };
  for (const auto& c : s.chunks) {
    for (const auto& [i, j] : all_pairs(s.n_qubits)) {
      emit(compile_zz(c.zeta[pair_index(i, j, s.n_qubits)], dt, i, j));
    }
    for (std::size_t q = 0; q < s.n_qubits; ++q) {
      emit(compile_single_qubit(c.K[q], c.eps[q], dt, q));
    }
  }
  return circuit;
}

}  // namespace qnnw
