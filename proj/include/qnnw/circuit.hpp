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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnnw/linalg.hpp"
#include "qnnw/state.hpp"

namespace qnnw {

enum class GateKind { RotX, RotY, RotZ, CNOT };

inline std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RotX:
      return "rx";
    case GateKind::RotY:
      return "ry";
    case GateKind::RotZ:
      return "rz";
    case GateKind::CNOT:
      return "cx";
  }
  return "?";
}

struct GateOp {
  GateKind kind{GateKind::RotZ};
  std::size_t target{0};
  std::optional<std::size_t> control;  // CNOT only
  double angle{0.0};                   // radians, rotations only

  static GateOp rx(std::size_t q, double theta) { return {GateKind::RotX, q, std::nullopt, theta}; }
  static GateOp ry(std::size_t q, double theta) { return {GateKind::RotY, q, std::nullopt, theta}; }
  static GateOp rz(std::size_t q, double theta) { return {GateKind::RotZ, q, std::nullopt, theta}; }
  static GateOp cnot(std::size_t control, std::size_t target) {
    return {GateKind::CNOT, target, control, 0.0};
  }

  bool is_rotation() const { return kind != GateKind::CNOT; }

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

inline Axis rotation_axis(GateKind kind) {
  switch (kind) {
    case GateKind::RotX:
      return Axis::X;
    case GateKind::RotY:
      return Axis::Y;
    case GateKind::RotZ:
      return Axis::Z;
    case GateKind::CNOT:
      break;
  }
  throw std::invalid_argument("CNOT has no rotation axis");
}

inline void validate_gate(const GateOp& gate, std::size_t n_qubits) {
  if (gate.target >= n_qubits) {
    throw std::out_of_range("gate target " + std::to_string(gate.target) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
  }
  if (gate.kind == GateKind::CNOT) {
    if (!gate.control) throw std::invalid_argument("CNOT requires a control qubit");
    if (*gate.control >= n_qubits) {
      throw std::out_of_range("CNOT control " + std::to_string(*gate.control) + " out of range");
    }
    if (*gate.control == gate.target) {
      throw std::invalid_argument("CNOT control and target must differ");
    }
  } else if (gate.control) {
    throw std::invalid_argument("rotation gates take no control qubit");
  }
}

/// Ordered gate list; ops[0] is applied to the state first.
struct Circuit {
  std::size_t n_qubits{1};
  std::vector<GateOp> ops;

  Circuit() = default;
  explicit Circuit(std::size_t n) : n_qubits(n) {}
  Circuit(std::size_t n, std::vector<GateOp> gates) : n_qubits(n), ops(std::move(gates)) {
    for (const auto& g : ops) validate_gate(g, n_qubits);
  }

  void push(const GateOp& g) {
    validate_gate(g, n_qubits);
    ops.push_back(g);
  }

  void append(const std::vector<GateOp>& gates) {
    for (const auto& g : gates) push(g);
  }

  std::size_t single_qubit_count() const {
    std::size_t c = 0;
    for (const auto& g : ops) c += g.is_rotation() ? 1 : 0;
    return c;
  }
  std::size_t two_qubit_count() const { return ops.size() - single_qubit_count(); }
};

namespace kernels {

// Stride-based updates on a raw amplitude vector of 2^n entries.

inline void apply_1q(ComplexVector& amps, std::size_t n_qubits, std::size_t qubit,
                     const Matrix2c& u) {
  const std::size_t dim = dimension_of(n_qubits);
  const std::size_t stride = qubit_mask(qubit, n_qubits);
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const auto i0 = static_cast<Eigen::Index>(base + off);
      const auto i1 = static_cast<Eigen::Index>(base + off + stride);
      const Complex a0 = amps[i0];
      const Complex a1 = amps[i1];
      amps[i0] = u00 * a0 + u01 * a1;
      amps[i1] = u10 * a0 + u11 * a1;
    }
  }
}

inline void apply_cnot(ComplexVector& amps, std::size_t n_qubits, std::size_t control,
                       std::size_t target) {
  const std::size_t dim = dimension_of(n_qubits);
  const std::size_t cmask = qubit_mask(control, n_qubits);
  const std::size_t tmask = qubit_mask(target, n_qubits);
  for (std::size_t b = 0; b < dim; ++b) {
    if ((b & cmask) && !(b & tmask)) {
      std::swap(amps[static_cast<Eigen::Index>(b)], amps[static_cast<Eigen::Index>(b | tmask)]);
    }
  }
}

inline void apply_gate(ComplexVector& amps, std::size_t n_qubits, const GateOp& gate) {
  if (gate.kind == GateKind::CNOT) {
    apply_cnot(amps, n_qubits, *gate.control, gate.target);
  } else {
    apply_1q(amps, n_qubits, gate.target, rotation_matrix(rotation_axis(gate.kind), gate.angle));
  }
}

}  // namespace kernels

/// (embedded gate unitary) * state, without forming the 2^n x 2^n matrix.
inline StateVector apply_gate(StateVector state, const GateOp& gate) {
  validate_gate(gate, state.n_qubits());
  kernels::apply_gate(state.amplitudes_mut(), state.n_qubits(), gate);
  return state;
}

inline StateVector apply_circuit(StateVector state, const Circuit& circuit) {
  if (circuit.n_qubits != state.n_qubits()) {
    throw DimensionError("apply_circuit: circuit and state qubit counts differ");
  }
  for (const auto& g : circuit.ops) {
    validate_gate(g, state.n_qubits());
    kernels::apply_gate(state.amplitudes_mut(), state.n_qubits(), g);
  }
  return state;
}

inline constexpr std::size_t kDenseQubitCap = 10;

/// Full unitary of the circuit: op[k-1] ... op[1] op[0].
inline ComplexMatrix circuit_unitary(const Circuit& circuit, std::size_t cap = kDenseQubitCap) {
  if (circuit.n_qubits > cap) {
    throw CapacityError("circuit_unitary: " + std::to_string(circuit.n_qubits) +
                        " qubits exceeds dense cap " + std::to_string(cap));
  }
  const auto dim = static_cast<Eigen::Index>(dimension_of(circuit.n_qubits));
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& g : circuit.ops) validate_gate(g, circuit.n_qubits);
  for (Eigen::Index col = 0; col < dim; ++col) {
    ComplexVector column = u.col(col);
    for (const auto& g : circuit.ops) kernels::apply_gate(column, circuit.n_qubits, g);
    u.col(col) = column;
  }
  return u;
}

}  // namespace qnnw
