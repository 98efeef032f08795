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

// Gradient-descent training of schedule parameters against a TrainingSet.
//
// Loss L = sum_items (witness - target)^2; gradients are central finite
// differences, one coordinate at a time. With the symmetric flag the free
// parameters are one (K, eps, zeta) triple per chunk shared by every qubit
// and pair, so updates can never break the symmetry.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnnw/hamiltonian.hpp"
#include "qnnw/qasm.hpp"
#include "qnnw/witness.hpp"

namespace qnnw {

inline constexpr double kDefaultTotalTime = 1.58;

struct TrainerConfig {
  double learning_rate{0.05};
  std::size_t max_epochs{2000};
  double target_rms{1e-3};
  double gradient_step{1e-5};
  double momentum{0.9};
  bool symmetric{true};
  std::size_t chunk_count{4};
  std::uint64_t seed{0};
  Propagation method{Propagation::Chunked};
};

struct TrainResult {
  Schedule schedule;
  std::vector<double> rms_history;  // rms before each gradient step, plus the final value
  std::size_t epochs_used{0};
  bool converged{false};

  double final_rms() const { return rms_history.empty() ? 0.0 : rms_history.back(); }
};

/// Thrown when training runs away; carries the lowest-rms schedule seen.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, Schedule last_good, double last_good_rms)
      : std::runtime_error(what), last_good_(std::move(last_good)), last_good_rms_(last_good_rms) {}

  const Schedule& last_good() const { return last_good_; }
  double last_good_rms() const { return last_good_rms_; }

 private:
  Schedule last_good_;
  double last_good_rms_;
};

/// Flattens the trainable parameters of a schedule. Symmetric layout: [K, eps,
/// zeta] per chunk. Full layout: [K_0..K_{n-1}, eps_0.., zeta_pairs..] per chunk.
class ParameterLayout {
 public:
  ParameterLayout(const Schedule& shape, bool symmetric) : shape_(shape), symmetric_(symmetric) {
    shape_.validate();
    if (symmetric) {
      for (const auto& c : shape_.chunks) {
        if (!c.is_uniform()) {
          throw std::invalid_argument("symmetric training needs a symmetric initial schedule");
        }
      }
      shape_.symmetric = true;
    }
  }

  std::size_t per_chunk() const {
    const std::size_t n = shape_.n_qubits;
    return symmetric_ ? 3 : 2 * n + pair_count(n);
  }
  std::size_t size() const { return per_chunk() * shape_.chunks.size(); }

  std::vector<double> pack(const Schedule& s) const {
    std::vector<double> p;
    p.reserve(size());
    for (const auto& c : s.chunks) {
      if (symmetric_) {
        p.push_back(c.K.front());
        p.push_back(c.eps.front());
        p.push_back(c.zeta.empty() ? 0.0 : c.zeta.front());
      } else {
        p.insert(p.end(), c.K.begin(), c.K.end());
        p.insert(p.end(), c.eps.begin(), c.eps.end());
        p.insert(p.end(), c.zeta.begin(), c.zeta.end());
      }
    }
    return p;
  }

  Schedule unpack(const std::vector<double>& p) const {
    if (p.size() != size()) throw DimensionError("ParameterLayout::unpack: wrong parameter count");
    Schedule s = shape_;
    const std::size_t n = s.n_qubits;
    auto it = p.begin();
    for (auto& c : s.chunks) {
      if (symmetric_) {
        c = ChunkParams::uniform(n, it[0], it[1], it[2]);
        it += 3;
      } else {
        for (auto& v : c.K) v = *it++;
        for (auto& v : c.eps) v = *it++;
        for (auto& v : c.zeta) v = *it++;
      }
    }
    return s;
  }

 private:
  Schedule shape_;
  bool symmetric_;
};

inline WitnessMethod as_witness_method(Propagation m) {
  return m == Propagation::Exact ? WitnessMethod::Exact : WitnessMethod::Chunked;
}

/// Sum of squared errors over the training set.
inline double training_loss(const Schedule& s, const TrainingSet& set, Propagation method) {
  if (set.items.empty()) throw std::invalid_argument("training set is empty");
  const WitnessEvaluator eval(s, as_witness_method(method));
  const auto values = witness_values(eval, set);
  double loss = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double d = values[k] - set.items[k].target;
    loss += d * d;
  }
  return loss;
}

inline double rms_error(const Schedule& s, const TrainingSet& set,
                        Propagation method = Propagation::Chunked) {
  return std::sqrt(training_loss(s, set, method) / static_cast<double>(set.items.size()));
}

/// Central-difference gradient of training_loss over the layout's parameters.
inline std::vector<double> gradient(const Schedule& s, const TrainingSet& set,
                                    const TrainerConfig& config) {
  const ParameterLayout layout(s, config.symmetric);
  const auto p = layout.pack(s);
  const double h = config.gradient_step;
  std::vector<double> g(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto plus = p;
    auto minus = p;
    plus[k] += h;
    minus[k] -= h;
    const double lp = training_loss(layout.unpack(plus), set, config.method);
    const double lm = training_loss(layout.unpack(minus), set, config.method);
    if (!std::isfinite(lp) || !std::isfinite(lm)) {
      throw std::domain_error("gradient: non-finite loss");
    }
    g[k] = (lp - lm) / (2.0 * h);
  }
  return g;
}

/// One plain step p - lr * grad (no momentum).
inline Schedule descent_step(const Schedule& s, const TrainingSet& set, const TrainerConfig& config) {
  const ParameterLayout layout(s, config.symmetric);
  auto p = layout.pack(s);
  const auto g = gradient(s, set, config);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] -= config.learning_rate * g[k];
  return layout.unpack(p);
}

/// Brings `init` to config.chunk_count chunks by duplicating each chunk.
inline Schedule match_chunk_count(const Schedule& init, std::size_t chunk_count) {
  if (chunk_count == 0 || init.chunks.size() == chunk_count) return init;
  if (chunk_count % init.chunks.size() != 0) {
    throw std::invalid_argument("cannot refine " + std::to_string(init.chunks.size()) +
                                " chunks into " + std::to_string(chunk_count));
  }
  return refine_schedule(init, chunk_count / init.chunks.size());
}

inline TrainResult train(const Schedule& init, const TrainingSet& set, const TrainerConfig& config) {
  if (!(config.learning_rate > 0.0) || !(config.gradient_step > 0.0)) {
    throw std::invalid_argument("train: learning_rate and gradient_step must be positive");
  }
  if (set.n_qubits != init.n_qubits) {
    throw DimensionError("train: training set has " + std::to_string(set.n_qubits) +
                         " qubits, schedule has " + std::to_string(init.n_qubits));
  }
  const Schedule start = match_chunk_count(init, config.chunk_count);
  const ParameterLayout layout(start, config.symmetric);
  auto params = layout.pack(start);
  std::vector<double> velocity(params.size(), 0.0);

  TrainResult result;
  result.schedule = layout.unpack(params);
  Schedule best = result.schedule;
  double best_rms = std::numeric_limits<double>::infinity();
  double initial_rms = 0.0;
  std::size_t runaway_streak = 0;

  for (std::size_t epoch = 0;; ++epoch) {
    const Schedule current = layout.unpack(params);
    const double rms = rms_error(current, set, config.method);
    if (!std::isfinite(rms)) {
      throw DivergenceError("training produced a non-finite rms at epoch " + std::to_string(epoch),
                            best, best_rms);
    }
    if (epoch == 0) initial_rms = rms;
    result.rms_history.push_back(rms);
    result.schedule = current;
    if (rms < best_rms) {
      best_rms = rms;
      best = current;
    }
    if (rms <= config.target_rms) {
      result.converged = true;
      break;
    }
    runaway_streak = rms > 10.0 * initial_rms ? runaway_streak + 1 : 0;
    if (runaway_streak >= 50) {
      throw DivergenceError("training diverged: rms above 10x its initial value for 50 epochs",
                            best, best_rms);
    }
    if (epoch >= config.max_epochs) break;

    std::vector<double> g;
    try {
      g = gradient(current, set, config);
    } catch (const std::domain_error& e) {
      throw DivergenceError(e.what(), best, best_rms);
    }
    for (std::size_t k = 0; k < params.size(); ++k) {
      velocity[k] = config.momentum * velocity[k] - config.learning_rate * g[k];
      params[k] += velocity[k];
    }
    ++result.epochs_used;
  }
  return result;
}

/// Documented random initialization: K = 2.5 + U(-0.1, 0.1), eps and zeta from
/// U(-0.1, 0.1), total time 1.58. Symmetric configs draw one triple per chunk.
inline Schedule random_schedule(std::size_t n, const TrainerConfig& config,
                                double total_time = kDefaultTotalTime) {
  std::mt19937_64 rng(config.seed);
  auto uniform = [&rng](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  };
  Schedule s{n, {}, total_time, config.symmetric};
  for (std::size_t k = 0; k < config.chunk_count; ++k) {
    if (config.symmetric) {
      const double K = 2.5 + uniform(-0.1, 0.1);
      const double e = uniform(-0.1, 0.1);
      const double z = uniform(-0.1, 0.1);
      s.chunks.push_back(ChunkParams::uniform(n, K, e, z));
    } else {
      ChunkParams c = ChunkParams::uniform(n, 0.0, 0.0, 0.0);
      for (auto& v : c.K) v = 2.5 + uniform(-0.1, 0.1);
      for (auto& v : c.eps) v = uniform(-0.1, 0.1);
      for (auto& v : c.zeta) v = uniform(-0.1, 0.1);
      s.chunks.push_back(std::move(c));
    }
  }
  s.validate();
  return s;
}

/// Seeds an n-qubit symmetric schedule with the (n-1)-qubit values, then trains.
inline TrainResult bootstrap(const TrainResult& prev, std::size_t n, const TrainerConfig& config) {
  const Schedule& p = prev.schedule;
  p.validate();
  if (!p.symmetric) throw std::invalid_argument("bootstrap: previous schedule is not symmetric");
  if (n < 2) throw std::invalid_argument("bootstrap: need at least 2 qubits");
  std::vector<double> K, eps, zeta;
  for (const auto& c : p.chunks) {
    K.push_back(c.K.front());
    eps.push_back(c.eps.front());
    zeta.push_back(c.zeta.empty() ? 0.0 : c.zeta.front());
  }
  TrainerConfig cfg = config;
  cfg.symmetric = true;
  return train(symmetric_schedule(n, K, eps, zeta, p.total_time), build_training_set(n), cfg);
}

/// Trains `start` on its own qubit count, then bootstraps one qubit at a time
/// up to n_max. Returns one result per qubit count.
inline std::vector<TrainResult> bootstrap_chain(const Schedule& start, std::size_t n_max,
                                                const TrainerConfig& config) {
  std::vector<TrainResult> chain;
  TrainerConfig cfg = config;
  cfg.symmetric = true;
  chain.push_back(train(start, build_training_set(start.n_qubits), cfg));
  for (std::size_t n = start.n_qubits + 1; n <= n_max; ++n) {
    chain.push_back(bootstrap(chain.back(), n, cfg));
  }
  return chain;
}

inline std::string rms_history_csv(const TrainResult& r) {
  std::ostringstream out;
  out << "epoch,rms\n";
  for (std::size_t e = 0; e < r.rms_history.size(); ++e) {
    out << e << "," << format_real(r.rms_history[e]) << "\n";
  }
  return out.str();
}

/// One row per qubit count: n_qubits, K_1..K_C, eps_1..eps_C, zeta_1..zeta_C, rms, epochs.
inline std::string bootstrap_summary_csv(const std::vector<TrainResult>& chain) {
  std::ostringstream out;
  if (chain.empty()) return "";
  const std::size_t chunks = chain.front().schedule.chunks.size();
  out << "n_qubits";
  for (const char* name : {"K", "eps", "zeta"})
    for (std::size_t k = 1; k <= chunks; ++k) out << "," << name << "_" << k;
  out << ",rms,epochs\n";
  for (const auto& r : chain) {
    const auto& s = r.schedule;
    out << s.n_qubits;
    for (const auto& c : s.chunks) out << "," << format_real(c.K.front());
    for (const auto& c : s.chunks) out << "," << format_real(c.eps.front());
    for (const auto& c : s.chunks) out << "," << format_real(c.zeta.empty() ? 0.0 : c.zeta.front());
    out << "," << format_real(r.final_rms()) << "," << r.epochs_used << "\n";
  }
  return out.str();
}

}  // namespace qnnw
