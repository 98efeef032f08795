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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "qnnw/fixtures.hpp"
#include "qnnw/trainer.hpp"

using namespace qnnw;

namespace {

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

TrainerConfig config_with(std::uint64_t seed, double target = 1e-3) {
  TrainerConfig c;
  c.seed = seed;
  c.target_rms = target;
  return c;
}

}  // namespace

TEST(RmsError, Table2TwoQubits) {
  EXPECT_NEAR(rms_error(fixtures::table2_schedule(), build_training_set(2)), 1.4e-3, 5e-3);
}

TEST(RmsError, Table3SevenQubits) {
  EXPECT_LE(rms_error(fixtures::table3_schedule(), build_training_set(7)), 0.05);
}

TEST(RmsError, ZeroWhenTargetsAreMet) {
  TrainingSet set = build_training_set(2);
  const WitnessEvaluator eval(fixtures::table2_schedule(), WitnessMethod::Chunked);
  const auto values = witness_values(eval, set);
  for (std::size_t k = 0; k < values.size(); ++k) set.items[k].target = values[k];
  EXPECT_EQ(rms_error(fixtures::table2_schedule(), set), 0.0);
}

TEST(RmsError, EmptySetRejected) {
  EXPECT_THROW(rms_error(fixtures::table2_schedule(), TrainingSet{2, {}}), std::invalid_argument);
}

TEST(ParameterLayout, SymmetricPackUnpackRoundTrip) {
  const Schedule s = fixtures::table3_schedule();
  const ParameterLayout layout(s, true);
  EXPECT_EQ(layout.size(), 12u);
  EXPECT_EQ(layout.unpack(layout.pack(s)), s);
}

TEST(ParameterLayout, FullPackUnpackRoundTrip) {
  TrainerConfig cfg;
  cfg.symmetric = false;
  const Schedule s = random_schedule(3, cfg);
  const ParameterLayout layout(s, false);
  EXPECT_EQ(layout.size(), 4u * (3 + 3 + 3));
  EXPECT_EQ(layout.unpack(layout.pack(s)), s);
  EXPECT_THROW(layout.unpack({1.0}), DimensionError);
  EXPECT_THROW(ParameterLayout(s, true), std::invalid_argument);
}

TEST(RandomSchedule, DocumentedDistribution) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Schedule s = random_schedule(3, config_with(seed));
    EXPECT_TRUE(s.symmetric);
    EXPECT_EQ(s.chunks.size(), 4u);
    EXPECT_DOUBLE_EQ(s.total_time, 1.58);
    for (const auto& c : s.chunks) {
      EXPECT_TRUE(c.is_uniform());
      EXPECT_LE(std::abs(c.K[0] - 2.5), 0.1);
      EXPECT_LE(std::abs(c.eps[0]), 0.1);
      EXPECT_LE(std::abs(c.zeta[0]), 0.1);
    }
  }
  EXPECT_EQ(random_schedule(2, config_with(3)), random_schedule(2, config_with(3)));
  EXPECT_NE(random_schedule(2, config_with(3)), random_schedule(2, config_with(4)));
}

TEST(Gradient, StepSizeConsistency) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Schedule s = random_schedule(2, config_with(seed));
    const auto set = build_training_set(2);
    TrainerConfig coarse = config_with(seed), fine = config_with(seed);
    coarse.gradient_step = 1e-5;
    fine.gradient_step = 1e-6;
    const auto g1 = gradient(s, set, coarse);
    const auto g2 = gradient(s, set, fine);
    std::vector<double> diff(g1.size());
    for (std::size_t k = 0; k < g1.size(); ++k) diff[k] = g1[k] - g2[k];
    EXPECT_LT(norm(diff), 1e-2 * norm(g1));
  }
}

TEST(Gradient, VanishesAtTrainedMinimum) {
  TrainerConfig cfg = config_with(1, 0.0);
  cfg.max_epochs = 3000;
  const auto set = build_training_set(2);
  const TrainResult r = train(random_schedule(2, cfg), set, cfg);
  EXPECT_LT(norm(gradient(r.schedule, set, cfg)), 1e-4);
}

TEST(DescentStep, SmallStepDecreasesLoss) {
  const auto set = build_training_set(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TrainerConfig cfg = config_with(seed);
    cfg.learning_rate = 1e-3;
    const Schedule s = random_schedule(2, cfg);
    const double before = training_loss(s, set, cfg.method);
    const double after = training_loss(descent_step(s, set, cfg), set, cfg.method);
    EXPECT_LT(after, before) << "seed " << seed;
  }
}

TEST(Train, FromTable2AlreadyWithinTolerance) {
  TrainerConfig cfg;
  cfg.max_epochs = 0;
  const TrainResult r = train(fixtures::table2_schedule(), build_training_set(2), cfg);
  EXPECT_EQ(r.epochs_used, 0u);
  ASSERT_EQ(r.rms_history.size(), 1u);
  EXPECT_LE(r.final_rms(), 5e-3);
  EXPECT_EQ(r.schedule, fixtures::table2_schedule());
}

TEST(Train, StopsImmediatelyWhenTargetMet) {
  TrainerConfig cfg;
  cfg.target_rms = 1.0;
  const TrainResult r = train(random_schedule(2, cfg), build_training_set(2), cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.epochs_used, 0u);
}

TEST(Train, RandomInitConvergesForMostSeeds) {
  int converged = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const TrainerConfig cfg = config_with(seed);
    const TrainResult r = train(random_schedule(2, cfg), build_training_set(2), cfg);
    converged += r.converged && r.final_rms() <= 1e-3 && r.epochs_used <= 2000;
  }
  EXPECT_GE(converged, 3);
}

TEST(Train, DeterministicBitForBit) {
  for (const char* threads : {"1", "3"}) {
    ::setenv("QNN_THREADS", threads, 1);
    TrainerConfig cfg = config_with(7);
    cfg.max_epochs = 3;
    const Schedule init = random_schedule(5, cfg);
    const TrainResult a = train(init, build_training_set(5), cfg);
    const TrainResult b = train(init, build_training_set(5), cfg);
    EXPECT_EQ(a.schedule, b.schedule);
    EXPECT_EQ(a.rms_history, b.rms_history);
  }
  ::unsetenv("QNN_THREADS");
}

TEST(Train, ThreadCountDoesNotChangeResults) {
  TrainerConfig cfg = config_with(7);
  cfg.max_epochs = 2;
  const Schedule init = random_schedule(5, cfg);
  ::setenv("QNN_THREADS", "1", 1);
  const TrainResult serial = train(init, build_training_set(5), cfg);
  ::setenv("QNN_THREADS", "4", 1);
  const TrainResult threaded = train(init, build_training_set(5), cfg);
  ::unsetenv("QNN_THREADS");
  EXPECT_EQ(serial.rms_history, threaded.rms_history);
  EXPECT_EQ(serial.schedule, threaded.schedule);
}

TEST(Train, SymmetryPreserved) {
  TrainerConfig cfg = config_with(2);
  cfg.max_epochs = 10;
  const TrainResult r = train(random_schedule(3, cfg), build_training_set(3), cfg);
  EXPECT_TRUE(r.schedule.symmetric);
  for (const auto& c : r.schedule.chunks) EXPECT_TRUE(c.is_uniform());
  EXPECT_NO_THROW(r.schedule.validate());
}

TEST(Train, NonSymmetricModeUpdatesPerQubitParameters) {
  TrainerConfig cfg = config_with(2);
  cfg.symmetric = false;
  cfg.max_epochs = 5;
  const Schedule init = random_schedule(2, cfg);
  const TrainResult r = train(init, build_training_set(2), cfg);
  EXPECT_NE(r.schedule, init);
  EXPECT_LT(r.final_rms(), r.rms_history.front());
}

TEST(Train, EightChunksDuplicateFourChunkValues) {
  TrainerConfig cfg;
  cfg.chunk_count = 8;
  cfg.max_epochs = 0;
  const TrainResult r = train(fixtures::table2_schedule(), build_training_set(2), cfg);
  ASSERT_EQ(r.schedule.chunks.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(r.schedule.chunks[k], fixtures::table2_schedule().chunks[k / 2]);
  cfg.chunk_count = 6;
  EXPECT_THROW(train(fixtures::table2_schedule(), build_training_set(2), cfg), std::invalid_argument);
}

TEST(Train, DivergenceReportsLastGoodSchedule) {
  TrainerConfig cfg;
  cfg.learning_rate = 10.0;
  cfg.momentum = 0.0;
  cfg.target_rms = 1e-6;
  try {
    train(fixtures::table2_schedule(), build_training_set(2), cfg);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.last_good(), fixtures::table2_schedule());
    EXPECT_NEAR(e.last_good_rms(), rms_error(fixtures::table2_schedule(), build_training_set(2)), 1e-15);
  }
}

TEST(Train, RejectsInvalidConfig) {
  TrainerConfig cfg;
  cfg.learning_rate = 0.0;
  EXPECT_THROW(train(fixtures::table2_schedule(), build_training_set(2), cfg), std::invalid_argument);
  EXPECT_THROW(train(fixtures::table2_schedule(), build_training_set(3), TrainerConfig{}), DimensionError);
}

TEST(Bootstrap, ThreeFromTrainedTwo) {
  TrainerConfig cfg;
  cfg.target_rms = 2e-3;
  cfg.max_epochs = 500;
  const TrainResult two = train(fixtures::table2_schedule(), build_training_set(2), cfg);
  const TrainResult three = bootstrap(two, 3, cfg);
  EXPECT_TRUE(three.converged);
  EXPECT_LE(three.final_rms(), 2e-3);
  EXPECT_LE(three.epochs_used, 500u);
  EXPECT_EQ(three.schedule.n_qubits, 3u);
}

TEST(Bootstrap, UncoupledScheduleCarriesRmsAcrossSizes) {
  const Schedule two = symmetric_schedule(2, {2.49, 2.47, 2.48, 2.49}, {0.0930, 0.116, 0.0954, 0.0833},
                                          {0, 0, 0, 0}, 1.58);
  TrainerConfig cfg;
  cfg.max_epochs = 0;
  const TrainResult r2 = train(two, build_training_set(2), cfg);
  const TrainResult r3 = bootstrap(r2, 3, cfg);
  const TrainResult r4 = bootstrap(r3, 4, cfg);
  EXPECT_NEAR(r3.rms_history.front(), r2.final_rms(), 1e-12);
  EXPECT_NEAR(r4.rms_history.front(), r2.final_rms(), 1e-12);
}

TEST(Bootstrap, ChainApproachesAsymptote) {
  const auto chain = bootstrap_chain(fixtures::table2_schedule(), 7, TrainerConfig{});
  ASSERT_EQ(chain.size(), 6u);
  for (const auto& r : chain) EXPECT_LE(r.final_rms(), 5e-3);
  for (std::size_t k = 0; k < 4; ++k) {
    auto dk = [&](std::size_t n) {
      return std::abs(chain[n - 2].schedule.chunks[k].K[0] - chain[n - 3].schedule.chunks[k].K[0]);
    };
    auto de = [&](std::size_t n) {
      return std::abs(chain[n - 2].schedule.chunks[k].eps[0] - chain[n - 3].schedule.chunks[k].eps[0]);
    };
    EXPECT_LT(dk(7), dk(3)) << "chunk " << k;
    EXPECT_LT(de(7), de(3)) << "chunk " << k;
  }
  const std::string csv = bootstrap_summary_csv(chain);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_EQ(csv.rfind("n_qubits,K_1,K_2,K_3,K_4,eps_1", 0), 0u);
}

TEST(Bootstrap, FasterThanRandomInit) {
  TrainerConfig cfg;
  cfg.target_rms = 2e-3;
  for (std::size_t k = 3; k <= 5; ++k) {
    std::vector<double> boot_epochs, random_epochs;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      cfg.seed = seed;
      auto prev = train(random_schedule(2, cfg), build_training_set(2), cfg);
      for (std::size_t n = 3; n < k; ++n) prev = bootstrap(prev, n, cfg);
      boot_epochs.push_back(static_cast<double>(bootstrap(prev, k, cfg).epochs_used));
      random_epochs.push_back(
          static_cast<double>(train(random_schedule(k, cfg), build_training_set(k), cfg).epochs_used));
    }
    EXPECT_LT(median(boot_epochs), median(random_epochs)) << "N=" << k;
    EXPECT_LT(std::accumulate(boot_epochs.begin(), boot_epochs.end(), 0.0),
              std::accumulate(random_epochs.begin(), random_epochs.end(), 0.0))
        << "N=" << k;
  }
}

TEST(Bootstrap, RejectsNonSymmetricPrevious) {
  TrainerConfig cfg;
  cfg.symmetric = false;
  TrainResult r;
  r.schedule = random_schedule(2, cfg);
  EXPECT_THROW(bootstrap(r, 3, TrainerConfig{}), std::invalid_argument);
}

TEST(TrainerCsv, RmsHistory) {
  TrainResult r;
  r.rms_history = {0.5, 0.25};
  EXPECT_EQ(rms_history_csv(r), "epoch,rms\n0,0.5\n1,0.25\n");
}
