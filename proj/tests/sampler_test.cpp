#include "faultgan/sampler.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "faultgan/error.hpp"
#include "test_support.hpp"

namespace faultgan {
namespace {

using testing_support::uniform_circuit;

ExperimentConfig target_search(const Circuit& c, double eps, std::size_t trials, std::uint64_t seed) {
  ExperimentConfig cfg(c);
  cfg.mode = CompareMode::kTargetSearch;
  cfg.epsilon = eps;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

double mean_iterations(const std::vector<DeviationSample>& samples) {
  double total = 0;
  for (const auto& s : samples) total += static_cast<double>(s.iterations);
  return total / static_cast<double>(samples.size());
}

// Oracle: geometric mean 2^N / sum_{i <= k} C(N, i), computed independently.
double geometric_mean_draws(int n, int k) {
  double ball = 0;
  double c = 1;
  for (int i = 0; i <= k; ++i) {
    ball += c;
    c = c * (n - i) / (i + 1);
  }
  return std::ldexp(1.0, n) / ball;
}

TEST(RelativeUncertainty, Examples) {
  const auto x = BitVector::from_string("1010");
  EXPECT_EQ(relative_uncertainty(x, x), 0.0);
  EXPECT_EQ(relative_uncertainty(x, BitVector::from_string("1000")), 0.25);
  const auto y = BitVector::from_string("10110010");
  EXPECT_EQ(relative_uncertainty(y, BitVector::from_string("01001101")), 1.0);
  EXPECT_THROW(relative_uncertainty(x, y), Error);
}

TEST(MaxHamming, AbsorbsGridRoundingOnly) {
  EXPECT_EQ(max_hamming(0.25, 4), 1);
  EXPECT_EQ(max_hamming(0.24, 4), 0);
  EXPECT_EQ(max_hamming(3 * 0.05, 20), 3);
  EXPECT_EQ(max_hamming(1.0, 8), 8);
  EXPECT_EQ(max_hamming(0.0, 8), 0);
}

TEST(Deviation, Examples) {
  const auto d1 = deviation(BitVector::from_string("1111"), BitVector::from_string("1111"));
  EXPECT_EQ(d1.re, 30U);
  EXPECT_EQ(d1.im, 30U);
  const auto d2 = deviation(BitVector::from_string("0000"), BitVector::from_string("1111"));
  EXPECT_EQ(d2.re, 0U);
  EXPECT_EQ(d2.im, 30U);
  const auto d3 = deviation(BitVector::from_string("1010"), BitVector::from_string("0011"));
  EXPECT_EQ(d3.re, 10U);
  EXPECT_EQ(d3.im, 24U);
  EXPECT_THROW(deviation(BitVector(4), BitVector(5)), Error);
}

TEST(Config, Validation) {
  ExperimentConfig cfg(uniform_circuit(4, {GateKind::kNot}));
  EXPECT_NO_THROW(cfg.validate());
  cfg.epsilon = 1.5;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.epsilon = 0.1;
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.trials = 1;
  EXPECT_EQ(run_experiment(cfg).size(), 1U);
  cfg.faults = parse_faults("missing:L3.S1");
  EXPECT_THROW(run_experiment(cfg), Error);
}

TEST(RunTrial, NoFaultFaultCompareAcceptsFirstDraw) {
  ExperimentConfig cfg(uniform_circuit(8, {GateKind::kAnd, GateKind::kXor}));
  cfg.trials = 1000;
  cfg.seed = 11;
  const auto samples = run_experiment(cfg);
  ASSERT_EQ(samples.size(), 1000U);
  for (std::size_t t = 0; t < samples.size(); ++t) {
    EXPECT_EQ(samples[t].trial, t);
    EXPECT_TRUE(samples[t].accepted);
    EXPECT_EQ(samples[t].iterations, 1U);
    EXPECT_EQ(samples[t].re, samples[t].im);
  }
}

TEST(RunTrial, AcceptedFaultCompareSamplesRespectEpsilon) {
  ExperimentConfig cfg(uniform_circuit(8, {GateKind::kNot}));
  cfg.faults = parse_faults("missing:L1.S8,flip:0.2");
  cfg.epsilon = 0.25;
  cfg.trials = 2000;
  cfg.seed = 3;
  for (const auto& s : run_experiment(cfg)) {
    if (!s.accepted) continue;
    const double u = relative_uncertainty(decode_int(8, s.re), decode_int(8, s.im));
    EXPECT_LE(u, 0.25);
  }
}

TEST(RunTrial, CensoredTrialKeepsLastDraw) {
  // Flipping every input bit makes the buffer output the complement of the ideal one.
  ExperimentConfig cfg(uniform_circuit(4, {GateKind::kBuffer}));
  cfg.faults = parse_faults("flip:1");
  cfg.max_iterations = 7;
  cfg.trials = 5;
  for (const auto& s : run_experiment(cfg)) {
    EXPECT_FALSE(s.accepted);
    EXPECT_EQ(s.iterations, 7U);
    EXPECT_EQ(s.re + s.im, full_scale(4));
  }
}

TEST(RunTrial, TargetSearchIdentityGeometricMeans) {
  const Circuit identity = uniform_circuit(4, {GateKind::kBuffer});
  const double m0 = mean_iterations(run_experiment(target_search(identity, 0.0, 10000, 1)));
  EXPECT_NEAR(m0, geometric_mean_draws(4, 0), 0.05 * 16.0);
  const double m1 = mean_iterations(run_experiment(target_search(identity, 0.25, 10000, 2)));
  EXPECT_NEAR(m1, geometric_mean_draws(4, 1), 0.05 * 3.2);
}

TEST(RunExperiment, WorkerCountDoesNotChangeResults) {
  for (CompareMode mode : {CompareMode::kFaultCompare, CompareMode::kTargetSearch}) {
    ExperimentConfig cfg(uniform_circuit(10, {GateKind::kAnd, GateKind::kNot}));
    cfg.faults = parse_faults("swap:L1.S9:or,flip:0.05");
    cfg.mode = mode;
    cfg.epsilon = 0.2;
    cfg.trials = 777;
    cfg.seed = 42;
    cfg.max_iterations = 5000;
    const auto one = run_experiment(cfg);
    cfg.workers = 8;
    EXPECT_EQ(run_experiment(cfg), one);
    cfg.workers = 3;
    EXPECT_EQ(run_experiment(cfg), one);
  }
}

TEST(RunExperiment, MemoizedRepeatsNeverNeedMoreDraws) {
  ExperimentConfig cfg = target_search(uniform_circuit(4, {GateKind::kAnd, GateKind::kNot}), 0.25, 3000, 9);
  cfg.memoize = true;
  cfg.max_iterations = 1000;
  const auto memo = run_experiment(cfg);
  std::map<std::uint64_t, std::vector<std::uint64_t>> per_target;
  for (const auto& s : memo) {
    if (s.accepted) per_target[s.im].push_back(s.iterations);
  }
  for (const auto& [target, iters] : per_target) {
    for (std::size_t k = 1; k < iters.size(); ++k) EXPECT_LE(iters[k], iters[k - 1]) << target;
  }
  cfg.memoize = false;
  EXPECT_LT(mean_iterations(memo), mean_iterations(run_experiment(cfg)));
}

TEST(RunExperiment, MeanIterationsNonIncreasingInEpsilon) {
  // Identical seeds give identical targets and draw sequences, so each trial
  // can only stop earlier at a looser tolerance.
  const Circuit c = uniform_circuit(6, {GateKind::kAnd, GateKind::kNot});
  std::vector<DeviationSample> previous;
  double previous_mean = INFINITY;
  for (double eps : {0.0, 1.0 / 6, 2.0 / 6, 3.0 / 6, 1.0}) {
    ExperimentConfig cfg = target_search(c, eps, 2000, 5);
    // AND pairs reach only a few targets; keep unreachable ones cheap.
    cfg.max_iterations = 5000;
    const auto samples = run_experiment(cfg);
    const double m = mean_iterations(samples);
    EXPECT_LE(m, previous_mean) << eps;
    if (!previous.empty()) {
      for (std::size_t t = 0; t < samples.size(); ++t) EXPECT_LE(samples[t].iterations, previous[t].iterations);
    }
    previous = samples;
    previous_mean = m;
  }
}

TEST(RunExperiment, PerturbedBufferOutputsAreUniform) {
  ExperimentConfig cfg(uniform_circuit(4, {GateKind::kBuffer}));
  cfg.faults = parse_faults("flip:0.5");
  cfg.epsilon = 1.0;
  cfg.trials = 100000;
  cfg.seed = 2024;
  std::vector<double> counts(16, 0.0);
  for (const auto& s : run_experiment(cfg)) {
    ASSERT_TRUE(s.accepted);
    ASSERT_EQ(s.re % 2, 0U);
    counts[s.re / 2] += 1;
  }
  const double expected = 100000.0 / 16;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 0.99 quantile of chi-square with 15 degrees of freedom.
  EXPECT_LT(chi2, 30.578);
}

TEST(ModulatorCache, ConsistencyAndInvalidation) {
  const Circuit c = uniform_circuit(4, {GateKind::kNot});
  ModulatorCache cache;
  cache.bind("a");
  cache.store(0b1111, 0b0000);
  cache.store(0b1111, 0b0000);
  cache.store(0b1111, 0b1000);
  EXPECT_EQ(cache.size(), 2U);
  EXPECT_TRUE(cache.consistent(c, 0.25));
  EXPECT_FALSE(cache.consistent(c, 0.0));
  cache.bind("a");
  EXPECT_EQ(cache.size(), 2U);
  cache.bind("b");
  EXPECT_EQ(cache.size(), 0U);
  EXPECT_TRUE(cache.candidates(0b1111).empty());

  ExperimentConfig cfg(c);
  const std::string base = cache_fingerprint(cfg);
  cfg.epsilon = 0.5;
  EXPECT_NE(cache_fingerprint(cfg), base);
  cfg.epsilon = 0.0;
  cfg.faults = parse_faults("missing:L1.S1");
  EXPECT_NE(cache_fingerprint(cfg), base);
}

TEST(IterationStats, CountsCensoring) {
  std::vector<DeviationSample> s(4);
  s[0].accepted = true;
  s[0].iterations = 2;
  s[1].accepted = true;
  s[1].iterations = 4;
  s[2].accepted = true;
  s[2].iterations = 9;
  s[3].accepted = false;
  s[3].iterations = 10;
  const auto st = iteration_stats(s);
  EXPECT_EQ(st.trials, 4U);
  EXPECT_EQ(st.accepted, 3U);
  EXPECT_DOUBLE_EQ(st.censored_fraction, 0.25);
  EXPECT_DOUBLE_EQ(st.mean_iterations, 5.0);
  EXPECT_DOUBLE_EQ(st.median_iterations, 4.0);
  EXPECT_DOUBLE_EQ(st.iterations_per_acceptance, 25.0 / 3);
}

TEST(Mode, Names) {
  EXPECT_EQ(parse_mode(mode_name(CompareMode::kTargetSearch)), CompareMode::kTargetSearch);
  EXPECT_EQ(parse_mode(mode_name(CompareMode::kFaultCompare)), CompareMode::kFaultCompare);
  EXPECT_FALSE(parse_mode("search").has_value());
}

}  // namespace
}  // namespace faultgan
