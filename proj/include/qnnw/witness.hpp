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

// Pairwise entanglement witness <Z_i Z_j>^2 at the end of a schedule, and the
// four-state training set it is trained against.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qnnw/circuit.hpp"
#include "qnnw/compiler.hpp"
#include "qnnw/hamiltonian.hpp"
#include "qnnw/parallel.hpp"
#include "qnnw/qasm.hpp"
#include "qnnw/state.hpp"

namespace qnnw {

enum class PairStateKind { Bell, Flat, C, P };

inline constexpr std::array<PairStateKind, 4> kAllPairStates{
    PairStateKind::Bell, PairStateKind::Flat, PairStateKind::C, PairStateKind::P};

inline std::string_view to_string(PairStateKind kind) {
  switch (kind) {
    case PairStateKind::Bell:
      return "Bell";
    case PairStateKind::Flat:
      return "Flat";
    case PairStateKind::C:
      return "C";
    case PairStateKind::P:
      return "P";
  }
  return "?";
}

inline PairStateKind parse_pair_state_kind(std::string_view name) {
  for (auto k : kAllPairStates) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown state '" + std::string(name) +
                              "' (expected Bell, Flat, C or P)");
}

/// Trained target of the witness for each kind.
inline double witness_target(PairStateKind kind) {
  switch (kind) {
    case PairStateKind::Bell:
      return 1.0;
    case PairStateKind::Flat:
    case PairStateKind::C:
      return 0.0;
    case PairStateKind::P:
      return 0.443;
  }
  return 0.0;
}

/// Normalized two-qubit amplitudes over |00>, |01>, |10>, |11>.
inline std::array<double, 4> pair_amplitudes(PairStateKind kind) {
  switch (kind) {
    case PairStateKind::Bell: {
      const double a = 1.0 / std::sqrt(2.0);
      return {a, 0.0, 0.0, a};
    }
    case PairStateKind::Flat:
      return {0.5, 0.5, 0.5, 0.5};
    case PairStateKind::C: {
      const double s = std::sqrt(5.0);
      return {2.0 / s, 1.0 / s, 0.0, 0.0};
    }
    case PairStateKind::P: {
      const double a = 1.0 / std::sqrt(3.0);
      return {0.0, a, a, a};
    }
  }
  return {1.0, 0.0, 0.0, 0.0};
}

/// Two-qubit state on (i, j) with every other qubit in |0>.
inline StateVector make_pair_state(PairStateKind kind, QubitPair pair, std::size_t n) {
  const auto [i, j] = pair;
  if (!(i < j && j < n)) {
    throw DimensionError("make_pair_state: need i < j < n, got (" + std::to_string(i) + "," +
                         std::to_string(j) + ") with n=" + std::to_string(n));
  }
  const auto amps = pair_amplitudes(kind);
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(n)));
  for (std::size_t b = 0; b < 4; ++b) {
    std::size_t index = 0;
    if (b & 2) index |= qubit_mask(i, n);
    if (b & 1) index |= qubit_mask(j, n);
    v[static_cast<Eigen::Index>(index)] = amps[b];
  }
  return StateVector(n, std::move(v));
}

enum class WitnessMethod { Exact, Chunked, Gates };

inline std::string_view to_string(WitnessMethod m) {
  switch (m) {
    case WitnessMethod::Exact:
      return "exact";
    case WitnessMethod::Chunked:
      return "chunked";
    case WitnessMethod::Gates:
      return "gates";
  }
  return "?";
}

inline WitnessMethod parse_witness_method(std::string_view name) {
  if (name == "exact") return WitnessMethod::Exact;
  if (name == "chunked") return WitnessMethod::Chunked;
  if (name == "gates") return WitnessMethod::Gates;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected exact, chunked or gates)");
}

/// Propagates states through one schedule by a fixed method. Propagators or
/// the compiled circuit are built once, so evaluating a whole training set
/// costs one setup.
class WitnessEvaluator {
 public:
  WitnessEvaluator(const Schedule& s, WitnessMethod method, CompileOptions options = {})
      : n_(s.n_qubits) {
    if (method == WitnessMethod::Gates) {
      circuit_ = compile_schedule(s, options);
    } else {
      evolver_.emplace(s, method == WitnessMethod::Exact ? Propagation::Exact
                                                         : Propagation::Chunked);
    }
  }

  /// Evaluate with an externally supplied circuit (e.g. parsed from QASM).
  explicit WitnessEvaluator(Circuit circuit) : n_(circuit.n_qubits), circuit_(std::move(circuit)) {}

  std::size_t n_qubits() const { return n_; }

  StateVector final_state(const StateVector& initial) const {
    if (initial.n_qubits() != n_) {
      throw DimensionError("witness: state has " + std::to_string(initial.n_qubits()) +
                           " qubits, schedule has " + std::to_string(n_));
    }
    if (circuit_) return apply_circuit(initial, *circuit_);
    return evolver_->evolve(initial);
  }

  double correlation(const StateVector& initial, QubitPair pair) const {
    return expectation_zz(final_state(initial), pair.first, pair.second);
  }

  double value(const StateVector& initial, QubitPair pair) const {
    const double zz = correlation(initial, pair);
    return zz * zz;
  }

 private:
  std::size_t n_;
  std::optional<ScheduleEvolver> evolver_;
  std::optional<Circuit> circuit_;
};

inline double witness_value(const StateVector& initial, QubitPair pair, const Schedule& s,
                            WitnessMethod method) {
  if (initial.n_qubits() != s.n_qubits) {
    throw DimensionError("witness_value: state has " + std::to_string(initial.n_qubits()) +
                         " qubits, schedule has " + std::to_string(s.n_qubits));
  }
  detail::check_pair(pair.first, pair.second, s.n_qubits);
  return WitnessEvaluator(s, method).value(initial, pair);
}

inline DensityMatrix final_density_matrix(const DensityMatrix& initial, const Schedule& s,
                                          WitnessMethod method) {
  if (initial.n_qubits() != s.n_qubits) {
    throw DimensionError("witness_value: density matrix has " +
                         std::to_string(initial.n_qubits()) + " qubits, schedule has " +
                         std::to_string(s.n_qubits));
  }
  if (method == WitnessMethod::Gates) {
    return initial.evolved(circuit_unitary(compile_schedule(s)));
  }
  return propagate(initial, s,
                   method == WitnessMethod::Exact ? Propagation::Exact : Propagation::Chunked);
}

inline double witness_value(const DensityMatrix& initial, QubitPair pair, const Schedule& s,
                            WitnessMethod method) {
  detail::check_pair(pair.first, pair.second, s.n_qubits);
  const double zz = expectation_zz(final_density_matrix(initial, s, method), pair.first, pair.second);
  return zz * zz;
}

struct TrainingItem {
  PairStateKind kind;
  QubitPair pair;
  StateVector state;
  double target;
};

struct TrainingSet {
  std::size_t n_qubits{2};
  std::vector<TrainingItem> items;
};

/// Four states per pair: 4 * C(n, 2) items, pairs in lexicographic order.
inline TrainingSet build_training_set(std::size_t n) {
  if (n < 2) throw std::invalid_argument("build_training_set: need at least 2 qubits");
  TrainingSet set{n, {}};
  for (const auto& pair : all_pairs(n)) {
    for (auto kind : kAllPairStates) {
      set.items.push_back({kind, pair, make_pair_state(kind, pair, n), witness_target(kind)});
    }
  }
  return set;
}

/// Witness value of every item, in item order.
inline std::vector<double> witness_values(const WitnessEvaluator& eval, const TrainingSet& set) {
  if (set.n_qubits != eval.n_qubits()) {
    throw DimensionError("training set has " + std::to_string(set.n_qubits) +
                         " qubits, schedule has " + std::to_string(eval.n_qubits()));
  }
  std::vector<double> out(set.items.size());
  // Tiny registers are cheaper to evaluate inline than to hand to threads.
  const std::size_t min_per_worker = set.n_qubits >= 5 ? 4 : out.size() + 1;
  parallel_for(
      out.size(), [&](std::size_t k) { out[k] = eval.value(set.items[k].state, set.items[k].pair); },
      min_per_worker);
  return out;
}

inline std::string pair_label(QubitPair pair) {
  return std::to_string(pair.first) + "-" + std::to_string(pair.second);
}

/// CSV row: state_kind,pair,method,value.
inline std::string witness_csv_row(PairStateKind kind, QubitPair pair, WitnessMethod method,
                                   double value) {
  return std::string(to_string(kind)) + "," + pair_label(pair) + "," +
         std::string(to_string(method)) + "," + format_real(value);
}

}  // namespace qnnw
