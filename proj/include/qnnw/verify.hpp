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

// Separates the two error sources of the gate pipeline: gates vs. chunked
// propagator (round-off only) and chunked vs. exact propagator (Trotter
// error from non-commuting terms).

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnnw/circuit.hpp"
#include "qnnw/compiler.hpp"
#include "qnnw/hamiltonian.hpp"
#include "qnnw/witness.hpp"

namespace qnnw {

struct StateEquivalence {
  PairStateKind kind;
  double gate_vs_chunked;   // Frobenius distance of final density matrices
  double chunked_vs_exact;
};

struct EquivalenceReport {
  double frobenius_gate_vs_chunked{0.0};  // on full unitaries
  double frobenius_chunked_vs_exact{0.0};
  QubitPair pair{0, 1};
  std::vector<StateEquivalence> states;

  double max_state_gate_vs_chunked() const {
    double m = 0.0;
    for (const auto& s : states) m = std::max(m, s.gate_vs_chunked);
    return m;
  }
};

/// `circuit` replaces the freshly compiled circuit when given.
inline EquivalenceReport verify_equivalence(const Schedule& s, QubitPair pair = {0, 1},
                                            const std::optional<Circuit>& circuit = std::nullopt,
                                            std::size_t cap = kDenseQubitCap) {
  s.validate();
  if (s.n_qubits > cap) {
    throw CapacityError("verify_equivalence: " + std::to_string(s.n_qubits) +
                        " qubits exceeds dense cap " + std::to_string(cap));
  }
  const Circuit gates = circuit ? *circuit : compile_schedule(s);
  if (gates.n_qubits != s.n_qubits) {
    throw DimensionError("verify_equivalence: circuit has " + std::to_string(gates.n_qubits) +
                         " qubits, schedule has " + std::to_string(s.n_qubits));
  }
  const ComplexMatrix u_gates = circuit_unitary(gates, cap);
  const ComplexMatrix u_chunked = schedule_propagator(s, Propagation::Chunked, cap);
  const ComplexMatrix u_exact = schedule_propagator(s, Propagation::Exact, cap);

  EquivalenceReport report;
  report.pair = pair;
  report.frobenius_gate_vs_chunked = frobenius_distance(u_gates, u_chunked);
  report.frobenius_chunked_vs_exact = frobenius_distance(u_chunked, u_exact);
  for (auto kind : kAllPairStates) {
    const DensityMatrix rho0(make_pair_state(kind, pair, s.n_qubits));
    const auto g = rho0.evolved(u_gates).matrix();
    const auto c = rho0.evolved(u_chunked).matrix();
    const auto e = rho0.evolved(u_exact).matrix();
    report.states.push_back({kind, frobenius_distance(g, c), frobenius_distance(c, e)});
  }
  return report;
}

inline nlohmann::json to_json(const EquivalenceReport& r) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : r.states) {
    states.push_back({{"state", std::string(to_string(s.kind))},
                      {"gate_vs_chunked", s.gate_vs_chunked},
                      {"chunked_vs_exact", s.chunked_vs_exact}});
  }
  return {{"frobenius_gate_vs_chunked", r.frobenius_gate_vs_chunked},
          {"frobenius_chunked_vs_exact", r.frobenius_chunked_vs_exact},
          {"pair", pair_label(r.pair)},
          {"density_matrices", states}};
}

}  // namespace qnnw
