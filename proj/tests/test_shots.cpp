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

#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "qnnw/fixtures.hpp"
#include "qnnw/shots.hpp"

using namespace qnnw;

namespace {

ShotConfig config(std::vector<std::size_t> counts, std::size_t iterations = 100, std::uint64_t seed = 1) {
  ShotConfig c;
  c.shot_counts = std::move(counts);
  c.iterations = iterations;
  c.seed = seed;
  return c;
}

StateVector evolved(PairStateKind kind) {
  const Schedule s = fixtures::table2_schedule();
  return apply_circuit(make_pair_state(kind, {0, 1}, 2), compile_schedule(s));
}

bool same(const ShotStatistics& a, const ShotStatistics& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    const auto &p = a.points[k], &q = b.points[k];
    if (p.shot_count != q.shot_count || p.mean != q.mean || p.variance != q.variance ||
        p.zz_mean != q.zz_mean || p.zz_variance != q.zz_variance || p.ci_low != q.ci_low)
      return false;
  }
  return true;
}

}  // namespace

TEST(SampleWitness, DeterministicOutcomeIsExactlyOne) {
  Rng rng(1);
  for (std::size_t n : {1u, 7u, 1000u}) EXPECT_EQ(sample_zz_witness(StateVector(2), {0, 1}, n, rng), 1.0);
}

TEST(SampleWitness, FlatStateSquaredMeanIsOneOverN) {
  const StateVector flat = make_pair_state(PairStateKind::Flat, {0, 1}, 2);
  const std::size_t n = 1000;
  double sum = 0.0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    Rng rng = stream_rng(5, n, static_cast<std::uint64_t>(r));
    sum += sample_zz_witness(flat, {0, 1}, n, rng);
  }
  EXPECT_NEAR(sum / reps, 1.0 / n, 0.2 / n);
}

TEST(SampleWitness, BellThroughGatesNearExactWitness) {
  const StateVector bell = evolved(PairStateKind::Bell);
  const double zz = expectation_zz(bell, 0, 1);
  Rng rng = stream_rng(3, 15000, 0);
  EXPECT_NEAR(sample_zz_witness(bell, {0, 1}, 15000, rng), zz * zz, 0.01);
  EXPECT_NEAR(zz * zz, 0.999, 0.01);
}

TEST(SampleWitness, RejectsBadInput) {
  Rng rng(1);
  EXPECT_THROW(sample_zz_witness(StateVector(2), {0, 1}, 0, rng), std::invalid_argument);
  EXPECT_THROW(sample_zz_witness(StateVector(2), {0, 2}, 10, rng), DimensionError);
}

TEST(ParitySampler, FrequenciesMatchBornProbabilities) {
  ComplexVector a(4);
  a << std::sqrt(0.1), std::sqrt(0.2), std::sqrt(0.3), std::sqrt(0.4);
  const ParitySampler sampler(StateVector(2, a), {0, 1});
  Rng rng(9);
  const std::size_t n = 200000;
  const double mean = sampler.mean_parity(n, rng);
  EXPECT_NEAR(mean, 0.1 - 0.2 - 0.3 + 0.4, 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(ConfidenceInterval, ConstantSamplesHaveZeroWidth) {
  const auto [lo, hi] = confidence_interval(std::vector<double>(10, 0.3), 0.95);
  EXPECT_DOUBLE_EQ(lo, 0.3);
  EXPECT_DOUBLE_EQ(hi, 0.3);
}

TEST(ConfidenceInterval, ZeroOneSamples) {
  std::vector<double> s;
  for (int k = 0; k < 50; ++k) {
    s.push_back(0.0);
    s.push_back(1.0);
  }
  const auto summary = summarize(s);
  EXPECT_DOUBLE_EQ(summary.mean, 0.5);
  const auto [lo, hi] = confidence_interval(s, 0.95);
  EXPECT_NEAR((hi - lo) / 2.0, 1.959963984540054 * summary.std, 1e-12);
  EXPECT_NEAR(normal_quantile_two_sided(0.95), 1.959963984540054, 1e-12);
  EXPECT_THROW(confidence_interval({1.0}, 0.95), std::invalid_argument);
  EXPECT_THROW(normal_quantile_two_sided(1.0), std::invalid_argument);
}

TEST(Sweep, DeterministicStateHasZeroVariance) {
  const auto stats = sweep_state(StateVector(2), {0, 1}, config({10, 100, 1000}, 20));
  for (const auto& p : stats.points) {
    EXPECT_EQ(p.mean, 1.0);
    EXPECT_EQ(p.variance, 0.0);
    EXPECT_EQ(p.ci_low, p.ci_high);
  }
}

TEST(Sweep, BellConfidenceHalfWidthAtFifteenThousand) {
  const auto stats = sweep(fixtures::table2_schedule(), PairStateKind::Bell, {0, 1}, config({15000}));
  EXPECT_LE(stats.at(15000).ci_half_width, 0.002);
}

TEST(Sweep, FlatVarianceFallsAsOneOverShots) {
  const auto stats =
      sweep(fixtures::table2_schedule(), PairStateKind::Flat, {0, 1}, config(ShotConfig::grid(500, 20000, 500)));
  const double slope = loglog_slope(stats, [](const ShotPoint& p) { return p.zz_variance; }, 500);
  EXPECT_NEAR(slope, -1.0, 0.15);
}

TEST(Sweep, VarianceShrinksSixteenfoldShots) {
  const auto grid = std::vector<std::size_t>{50, 100, 200, 400, 800, 1600, 3200, 6400};
  for (auto kind : kAllPairStates) {
    const auto stats = sweep(fixtures::table2_schedule(), kind, {0, 1}, config(grid));
    for (std::size_t k = 0; k + 4 < grid.size(); ++k) {
      EXPECT_LE(stats.points[k + 4].variance, 1.1 * stats.points[k].variance)
          << to_string(kind) << " at " << grid[k];
    }
    EXPECT_LT(loglog_slope(stats, [](const ShotPoint& p) { return p.variance; }), 0.0) << to_string(kind);
  }
}

TEST(Sweep, ParityMeanIsUnbiased) {
  for (auto kind : kAllPairStates) {
    const StateVector final_state = evolved(kind);
    const double exact = expectation_zz(final_state, 0, 1);
    const auto stats = sweep_state(final_state, {0, 1}, config({200, 2000}, 1000));
    for (const auto& p : stats.points) {
      const double se = std::sqrt(p.zz_variance / 1000.0);
      EXPECT_LE(std::abs(p.zz_mean - exact), std::max(3.0 * se, 1e-12)) << to_string(kind);
    }
  }
}

TEST(Sweep, FlatWitnessBiasIsOneOverN) {
  const auto stats =
      sweep_state(make_pair_state(PairStateKind::Flat, {0, 1}, 2), {0, 1}, config({1000}, 4000));
  EXPECT_NEAR(stats.at(1000).mean, 1e-3, 0.2e-3);
}

TEST(Sweep, ReproducibleAndThreadIndependent) {
  const auto cfg = config({50, 500, 5000}, 30, 42);
  ::setenv("QNN_THREADS", "1", 1);
  const auto a = sweep(fixtures::table2_schedule(), PairStateKind::P, {0, 1}, cfg);
  ::setenv("QNN_THREADS", "4", 1);
  const auto b = sweep(fixtures::table2_schedule(), PairStateKind::P, {0, 1}, cfg);
  ::unsetenv("QNN_THREADS");
  EXPECT_TRUE(same(a, b));
  EXPECT_EQ(sweep_csv(a), sweep_csv(b));
  const auto c = sweep(fixtures::table2_schedule(), PairStateKind::P, {0, 1}, config({50, 500, 5000}, 30, 43));
  EXPECT_FALSE(same(a, c));
}

TEST(Sweep, StreamsDependOnlyOnCell) {
  const StateVector s = evolved(PairStateKind::P);
  const auto wide = sweep_state(s, {0, 1}, config({100, 300, 900}, 10));
  const auto narrow = sweep_state(s, {0, 1}, config({300}, 10));
  EXPECT_EQ(wide.at(300).mean, narrow.at(300).mean);
  EXPECT_EQ(wide.at(300).variance, narrow.at(300).variance);
}

TEST(Sweep, DefaultGridAndCsv) {
  const auto grid = ShotConfig::default_grid();
  ASSERT_EQ(grid.size(), 400u);
  EXPECT_EQ(grid.front(), 50u);
  EXPECT_EQ(grid.back(), 20000u);
  const auto stats = sweep_state(StateVector(2), {0, 1}, config({10, 20}, 2));
  EXPECT_EQ(sweep_csv(stats),
            "shot_count,mean,variance,std,sem,ci_low,ci_high,zz_mean,zz_variance\n"
            "10,1,0,0,0,1,1,1,0\n20,1,0,0,0,1,1,1,0\n");
}

TEST(Sweep, ConfigValidation) {
  EXPECT_THROW(sweep_state(StateVector(2), {0, 1}, config({})), std::invalid_argument);
  EXPECT_THROW(sweep_state(StateVector(2), {0, 1}, config({10, 10})), std::invalid_argument);
  EXPECT_THROW(sweep_state(StateVector(2), {0, 1}, config({10}, 1)), std::invalid_argument);
  EXPECT_THROW(ShotConfig::grid(0, 10, 5), std::invalid_argument);
  const auto stats = sweep_state(StateVector(2), {0, 1}, config({10}, 2));
  EXPECT_THROW(stats.at(11), std::out_of_range);
}
