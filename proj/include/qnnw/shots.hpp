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

// Finite-shot estimation of the witness. Each shot draws a basis state from
// |amplitude|^2 by inverse CDF and records the parity (-1)^(b_i + b_j); the
// estimate is the squared mean parity. Sweeps repeat this over a grid of shot
// counts, each (shot_count, iteration) cell drawing from its own RNG stream
// so results do not depend on evaluation order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "qnnw/circuit.hpp"
#include "qnnw/compiler.hpp"
#include "qnnw/parallel.hpp"
#include "qnnw/qasm.hpp"
#include "qnnw/state.hpp"
#include "qnnw/witness.hpp"

namespace qnnw {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent stream for one sweep cell.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t shot_count, std::uint64_t iteration) {
  const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ shot_count) ^ iteration);
  return Rng(key);
}

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Sampler over the computational basis of a fixed state.
class ParitySampler {
 public:
  ParitySampler(const StateVector& state, QubitPair pair) {
    detail::check_pair(pair.first, pair.second, state.n_qubits());
    if (std::abs(state.norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("sampler: state is not normalized");
    }
    cdf_.resize(state.dim());
    parity_.resize(state.dim());
    double acc = 0.0;
    for (std::size_t b = 0; b < state.dim(); ++b) {
      acc += std::norm(state.amplitudes()[static_cast<Eigen::Index>(b)]);
      cdf_[b] = acc;
      parity_[b] = parity_sign(b, pair.first, pair.second, state.n_qubits());
    }
    // Round-off can leave the last entry a hair below 1.
    cdf_.back() = 1.0;
  }

  int draw(Rng& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return parity_[static_cast<std::size_t>(it - cdf_.begin())];
  }

  /// Mean parity over n_shots draws.
  double mean_parity(std::size_t n_shots, Rng& rng) const {
    if (n_shots == 0) throw std::invalid_argument("sampler: n_shots must be at least 1");
    long long sum = 0;
    for (std::size_t s = 0; s < n_shots; ++s) sum += draw(rng);
    return static_cast<double>(sum) / static_cast<double>(n_shots);
  }

 private:
  std::vector<double> cdf_;
  std::vector<int> parity_;
};

inline double sample_zz_witness(const StateVector& final_state, QubitPair pair, std::size_t n_shots,
                                Rng& rng) {
  const double m = ParitySampler(final_state, pair).mean_parity(n_shots, rng);
  return m * m;
}

inline double normal_quantile_two_sided(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
}

struct SampleSummary {
  double mean{0.0};
  double variance{0.0};  // unbiased, divisor R - 1
  double std{0.0};
};

inline SampleSummary summarize(const std::vector<double>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
  const double r = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / r;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double var = ss / (r - 1.0);
  return {mean, var, std::sqrt(var)};
}

/// mean -/+ z(level) * sample std of the estimates.
inline std::pair<double, double> confidence_interval(const std::vector<double>& samples,
                                                     double level) {
  const auto s = summarize(samples);
  const double half = normal_quantile_two_sided(level) * s.std;
  return {s.mean - half, s.mean + half};
}

struct ShotConfig {
  std::vector<std::size_t> shot_counts;
  std::size_t iterations{100};
  double confidence_level{0.95};
  std::uint64_t seed{0};

  /// 50, 100, ..., 20000.
  static std::vector<std::size_t> default_grid() { return grid(50, 20000, 50); }

  static std::vector<std::size_t> grid(std::size_t lo, std::size_t hi, std::size_t step) {
    if (lo == 0 || step == 0 || hi < lo) throw std::invalid_argument("invalid shot grid");
    std::vector<std::size_t> g;
    for (std::size_t s = lo; s <= hi; s += step) g.push_back(s);
    return g;
  }

  void validate() const {
    if (shot_counts.empty()) throw std::invalid_argument("ShotConfig: no shot counts");
    for (std::size_t k = 0; k < shot_counts.size(); ++k) {
      if (shot_counts[k] == 0) throw std::invalid_argument("ShotConfig: shot counts must be positive");
      if (k > 0 && shot_counts[k] <= shot_counts[k - 1]) {
        throw std::invalid_argument("ShotConfig: shot counts must be strictly increasing");
      }
    }
    if (iterations < 2) throw std::invalid_argument("ShotConfig: need at least 2 iterations");
    normal_quantile_two_sided(confidence_level);
  }
};

/// Statistics of the `iterations` witness estimates at one shot count. The
/// zz_* fields describe the unsquared mean parity of the same runs.
struct ShotPoint {
  std::size_t shot_count{0};
  double mean{0.0};
  double variance{0.0};
  double std{0.0};
  double sem{0.0};  // std / sqrt(iterations)
  double ci_half_width{0.0};
  double ci_low{0.0};
  double ci_high{0.0};
  double zz_mean{0.0};
  double zz_variance{0.0};
};

struct ShotStatistics {
  std::vector<ShotPoint> points;

  const ShotPoint& at(std::size_t shot_count) const {
    for (const auto& p : points)
      if (p.shot_count == shot_count) return p;
    throw std::out_of_range("no sweep point at " + std::to_string(shot_count) + " shots");
  }
};

/// Sweep over an already evolved state.
inline ShotStatistics sweep_state(const StateVector& final_state, QubitPair pair,
                                  const ShotConfig& config) {
  config.validate();
  const ParitySampler sampler(final_state, pair);
  const double z = normal_quantile_two_sided(config.confidence_level);
  const std::size_t n_counts = config.shot_counts.size();
  const std::size_t cells = n_counts * config.iterations;
  std::vector<double> parity_means(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const std::size_t c = cell / config.iterations;
    const std::size_t it = cell % config.iterations;
    Rng rng = stream_rng(config.seed, config.shot_counts[c], it);
    parity_means[cell] = sampler.mean_parity(config.shot_counts[c], rng);
  });

  ShotStatistics stats;
  for (std::size_t c = 0; c < n_counts; ++c) {
    std::vector<double> zz(parity_means.begin() + static_cast<std::ptrdiff_t>(c * config.iterations),
                           parity_means.begin() + static_cast<std::ptrdiff_t>((c + 1) * config.iterations));
    std::vector<double> witness(zz.size());
    std::transform(zz.begin(), zz.end(), witness.begin(), [](double m) { return m * m; });
    const auto w = summarize(witness);
    const auto p = summarize(zz);
    ShotPoint pt;
    pt.shot_count = config.shot_counts[c];
    pt.mean = w.mean;
    pt.variance = w.variance;
    pt.std = w.std;
    pt.sem = w.std / std::sqrt(static_cast<double>(config.iterations));
    pt.ci_half_width = z * w.std;
    pt.ci_low = w.mean - pt.ci_half_width;
    pt.ci_high = w.mean + pt.ci_half_width;
    pt.zz_mean = p.mean;
    pt.zz_variance = p.variance;
    stats.points.push_back(pt);
  }
  return stats;
}

/// Prepares the pair state, runs the compiled circuit and sweeps. The circuit
/// output is deterministic, so it is computed once and only sampling repeats.
inline ShotStatistics sweep(const Schedule& s, PairStateKind kind, QubitPair pair,
                            const ShotConfig& config) {
  const Circuit circuit = compile_schedule(s);
  const StateVector final_state = apply_circuit(make_pair_state(kind, pair, s.n_qubits), circuit);
  return sweep_state(final_state, pair, config);
}

/// Least-squares slope of log(y) against log(x) over points with x >= min_x.
template <typename Proj>
double loglog_slope(const ShotStatistics& stats, Proj y_of, std::size_t min_x = 0) {
  std::vector<double> lx, ly;
  for (const auto& p : stats.points) {
    if (p.shot_count < min_x) continue;
    const double y = y_of(p);
    if (!(y > 0.0)) continue;
    lx.push_back(std::log(static_cast<double>(p.shot_count)));
    ly.push_back(std::log(y));
  }
  if (lx.size() < 2) throw std::invalid_argument("loglog_slope: fewer than 2 usable points");
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  return sxy / sxx;
}

inline std::string sweep_csv(const ShotStatistics& stats) {
  std::ostringstream out;
  out << "shot_count,mean,variance,std,sem,ci_low,ci_high,zz_mean,zz_variance\n";
  for (const auto& p : stats.points) {
    out << p.shot_count << "," << format_real(p.mean) << "," << format_real(p.variance) << ","
        << format_real(p.std) << "," << format_real(p.sem) << "," << format_real(p.ci_low) << ","
        << format_real(p.ci_high) << "," << format_real(p.zz_mean) << ","
        << format_real(p.zz_variance) << "\n";
  }
  return out.str();
}

}  // namespace qnnw
