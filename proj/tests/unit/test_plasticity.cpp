#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/core/rng.hpp"
#include "spikewave/plasticity/learner.hpp"
#include "spikewave/plasticity/stdp.hpp"

using namespace spikewave;

namespace {

StdpParams params(double a_plus, double ratio = 4.0 / 3.0) {
  StdpParams p;
  p.a_plus = a_plus;
  p.ratio = ratio;
  return p;
}

}  // namespace

TEST(StdpOriginal, Examples) {
  EXPECT_DOUBLE_EQ(stdp_original(0.5, true, params(1.0)), 0.25);
  EXPECT_DOUBLE_EQ(stdp_original(0.5, false, params(1.0)), -0.1875);
  EXPECT_LT(std::abs(stdp_original(1e-9, true, params(1.0))), 1e-8);
  EXPECT_LT(std::abs(stdp_original(1.0 - 1e-9, false, params(1.0))), 1e-8);
}

TEST(StdpOriginal, DomainEnforced) {
  EXPECT_THROW(stdp_original(0.0, true, params(1.0)), ContractViolation);
  EXPECT_THROW(stdp_original(1.0, true, params(1.0)), ContractViolation);
  EXPECT_THROW(stdp_original(-0.2, false, params(1.0)), ContractViolation);
}

TEST(StdpNessler, Examples) {
  const StdpParams p = params(1.0);
  EXPECT_DOUBLE_EQ(stdp_nessler(0.0, p.epsilon / 2, p), 0.0);
  EXPECT_NEAR(stdp_nessler(-1.0, p.epsilon / 2, p), std::exp(1.0) - 1.0, 1e-12);
  EXPECT_NEAR(stdp_nessler(-1.0, p.epsilon / 2, p), 1.71828, 1e-5);
  EXPECT_DOUBLE_EQ(stdp_nessler(0.3, 2 * p.epsilon, p), -1.0);
  EXPECT_DOUBLE_EQ(stdp_nessler(0.3, 0.0, p), -1.0);
}

TEST(StdpProbabilistic, Examples) {
  EXPECT_DOUBLE_EQ(stdp_probabilistic(0.0, true, params(0.015625)), 0.015625);
  EXPECT_NEAR(stdp_probabilistic(1.0, true, params(0.25)), 0.09196986029286058, 1e-15);
  EXPECT_DOUBLE_EQ(stdp_probabilistic(2.0, false, params(0.25)), -0.1875);
  EXPECT_THROW(stdp_probabilistic(-1e-9, true, params(0.25)), ContractViolation);
}

TEST(StdpApply, ClampsPerRule) {
  EXPECT_DOUBLE_EQ(stdp_apply(Rule::Original, 0.999999, true, params(1.0)),
                   kOriginalWeightCeil);
  EXPECT_DOUBLE_EQ(stdp_apply(Rule::Original, 1e-6, false, params(1.0)),
                   kOriginalWeightFloor);
  EXPECT_DOUBLE_EQ(stdp_apply(Rule::Probabilistic, 0.1, false, params(0.25)), 0.0);
  EXPECT_GT(stdp_apply(Rule::Probabilistic, 5.0, true, params(0.25)), 5.0);
  EXPECT_THROW(stdp_apply(Rule::Nessler, 0.1, true, params(0.25)), ContractViolation);
}

TEST(StdpSigns, LtpPositiveLtdNegativeInEachDomain) {
  Rng rng = rng_create(2);
  for (int i = 0; i < 1000; ++i) {
    const StdpParams p = params(0.01 + rng.uniform(), 0.2 + 4.0 * rng.uniform());
    const double w01 = 1e-3 + (1.0 - 2e-3) * rng.uniform();
    EXPECT_GT(stdp_original(w01, true, p), 0.0);
    EXPECT_LT(stdp_original(w01, false, p), 0.0);
    const double wpos = 5.0 * rng.uniform();
    EXPECT_GT(stdp_probabilistic(wpos, true, p), 0.0);
    EXPECT_LT(stdp_probabilistic(wpos, false, p), 0.0);
    const double wneg = -0.01 - 5.0 * rng.uniform();
    EXPECT_GT(stdp_nessler(wneg, p.epsilon / 2, p), 0.0);
    EXPECT_LT(stdp_nessler(wneg, 3 * p.epsilon, p), 0.0);
  }
}

TEST(Closure, OriginalRuleStaysInsideOpenInterval) {
  Rng rng = rng_create(31);
  for (int traj = 0; traj < 10000; ++traj) {
    const StdpParams p = params(rng.uniform(1e-3, 1.0), rng.uniform(1.0, 4.0));
    double w = rng.uniform(1e-6, 1.0 - 1e-6);
    for (int step = 0; step < 50; ++step) {
      w = stdp_apply(Rule::Original, w, rng.below(2) == 0, p);
      ASSERT_GT(w, 0.0);
      ASSERT_LT(w, 1.0);
    }
  }
}

TEST(Closure, ProbabilisticRuleStaysNonNegative) {
  Rng rng = rng_create(32);
  for (int traj = 0; traj < 10000; ++traj) {
    const StdpParams p = params(rng.uniform(1e-3, 1.0), rng.uniform(0.25, 8.0));
    double w = rng.uniform(0.0, 3.0);
    for (int step = 0; step < 50; ++step) {
      w = stdp_apply(Rule::Probabilistic, w, rng.below(2) == 0, p);
      ASSERT_GE(w, 0.0);
      ASSERT_TRUE(std::isfinite(w));
    }
  }
}

TEST(LtpRecursion, FirstTerms) {
  EXPECT_NEAR(ltp_recursion(0.0, 1.0, 1), 1.0, 1e-12);
  EXPECT_NEAR(ltp_recursion(0.0, 1.0, 2), 1.3678794411714423, 1e-12);
  EXPECT_NEAR(ltp_recursion(0.0, 1.0, 2), 1.367879, 1e-6);
  EXPECT_NEAR(ltp_recursion(0.0, 1.0, 3), 1.6225258212150249, 1e-12);
  EXPECT_EQ(ltp_recursion(0.4, 1.0, 0), 0.4);
}

TEST(LtpRecursion, ExceedsPrintedBoundAtThirdStep) {
  const double limit = ltp_bound_claimed_limit(1.0);
  EXPECT_NEAR(limit, 1.5819767068693265, 1e-12);
  EXPECT_GT(ltp_recursion(0.0, 1.0, 3), limit);
  EXPECT_GT(ltp_recursion(0.0, 1.0, 3), ltp_bound_claimed(1.0, 3));
}

TEST(LtpRecursion, StrictlyIncreasingAndUnbounded) {
  for (double a : {0.01, 0.25, 1.0, 3.0}) {
    double prev = ltp_recursion(0.0, a, 0);
    for (std::uint64_t n = 1; n <= 200; ++n) {
      const double w = ltp_recursion(0.0, a, n);
      ASSERT_GT(w, prev);
      prev = w;
    }
  }
  // Growth like ln(n a+).
  EXPECT_NEAR(ltp_recursion(0.0, 1.0, 100000), std::log(100000.0), 0.1);
}

TEST(LtpBoundClaimed, Examples) {
  EXPECT_NEAR(ltp_bound_claimed(1.0, 1), 1.0, 1e-15);
  EXPECT_NEAR(ltp_bound_claimed(0.37, 1), 0.37, 1e-15);
  EXPECT_NEAR(ltp_bound_claimed(0.25, 4), 0.7144244988812632, 1e-12);
  EXPECT_NEAR(ltp_bound_claimed(1.0, 1000), 1.58198, 1e-5);
  EXPECT_THROW(ltp_bound_claimed(0.0, 3), DomainError);
  EXPECT_THROW(ltp_bound_claimed_limit(0.0), DomainError);
}

TEST(EquilibriumWeight, Examples) {
  EXPECT_NEAR(equilibrium_weight(3.0 / 7.0, params(0.25)), 0.0, 1e-12);
  EXPECT_NEAR(equilibrium_weight(0.5, params(0.25)), 0.28768207245178085, 1e-12);
  EXPECT_NEAR(equilibrium_weight(0.9, params(0.25, 1.0)), 2.1972245773362196, 1e-12);
  EXPECT_THROW(equilibrium_weight(0.0, params(0.25)), DomainError);
  EXPECT_THROW(equilibrium_weight(1.0, params(0.25)), DomainError);
}

TEST(EquilibriumMc, MatchesAnalyticWhereClampIsNegligible) {
  const StdpParams p = params(0.0625);
  for (double ps : {0.5, 0.7, 0.9}) {
    Rng rng = rng_create(1000 + static_cast<std::uint64_t>(ps * 10));
    EXPECT_NEAR(equilibrium_mc(ps, p, 100000, rng), equilibrium_weight(ps, p), 0.08)
        << "p* = " << ps;
  }
  Rng rng = rng_create(77);
  EXPECT_NEAR(equilibrium_mc(0.9, p, 100000, rng), 2.4849066497880004, 0.05);
}

// Stationary means from an independent simulation (40 runs of 1e5 events,
// a+ = 2^-4, ratio 4/3): the floor at zero and the convexity of e^-w push the
// mean above the analytic fixed point, by 0.054 at p* = 0.5 and 0.176 at
// p* = 3/7.
TEST(EquilibriumMc, ClampBiasNearSmallFixedPoints) {
  const StdpParams p = params(0.0625);
  Rng a = rng_create(78);
  const double half = equilibrium_mc(0.5, p, 100000, a);
  EXPECT_NEAR(half, 0.3417, 0.025);
  EXPECT_GT(half - std::log(4.0 / 3.0), 0.03);
  Rng b = rng_create(5);
  const double zero = equilibrium_mc(3.0 / 7.0, p, 100000, b);
  EXPECT_NEAR(zero, 0.1761, 0.015);
  EXPECT_GT(zero, 0.08);
}

TEST(EquilibriumMc, TooFewEventsRejected) {
  Rng rng = rng_create(5);
  EXPECT_THROW(equilibrium_mc(0.5, params(0.0625), 9999, rng), ContractViolation);
}

TEST(Schedule, DoublesEveryPeriodUntilCap) {
  const RunConfig cfg;
  EXPECT_DOUBLE_EQ(schedule_advance(cfg.a_plus_init, 0, cfg), 0.015625);
  EXPECT_DOUBLE_EQ(schedule_advance(cfg.a_plus_init, 399, cfg), 0.015625);
  EXPECT_DOUBLE_EQ(schedule_advance(cfg.a_plus_init, 400, cfg), 0.03125);
  EXPECT_DOUBLE_EQ(schedule_advance(cfg.a_plus_init, 800, cfg), 0.0625);
  EXPECT_DOUBLE_EQ(schedule_advance(cfg.a_plus_init, 1000000, cfg), 0.25);
}

TEST(Learner, PerFeatureScheduleAndUpdates) {
  RunConfig cfg;
  cfg.n_features = 2;
  cfg.schedule_period = 2;
  cfg.rule = Rule::Probabilistic;
  Learner learner(cfg);
  EXPECT_EQ(learner.n_features(), 2u);
  EXPECT_DOUBLE_EQ(learner.a_plus(0), 0.015625);
  EXPECT_DOUBLE_EQ(learner.a_minus(0), 0.015625 * 0.75);

  std::vector<double> tensor{0.0, 0.5};
  const std::vector<std::uint8_t> ltp{1, 0};
  learner.on_post_spike(0, tensor, ltp);
  EXPECT_DOUBLE_EQ(tensor[0], 0.015625);
  EXPECT_DOUBLE_EQ(tensor[1], 0.5 - 0.015625 * 0.75);
  learner.on_post_spike(0, tensor, ltp);
  EXPECT_EQ(learner.post_spikes(0), 2u);
  EXPECT_EQ(learner.post_spikes(1), 0u);
  EXPECT_EQ(learner.post_spikes(), 2u);
  EXPECT_DOUBLE_EQ(learner.a_plus(0), 0.03125);
  EXPECT_DOUBLE_EQ(learner.a_plus(1), 0.015625);
}

TEST(Learner, ZeroRateLeavesTensorUntouched) {
  RunConfig cfg;
  cfg.a_plus_init = 0.0;
  Learner learner(cfg);
  std::vector<double> tensor{0.3, 0.7};
  const std::vector<std::uint8_t> ltp{1, 0};
  for (int i = 0; i < 1000; ++i) learner.on_post_spike(3, tensor, ltp);
  EXPECT_EQ(tensor, (std::vector<double>{0.3, 0.7}));
}

TEST(Learner, RejectsBadArguments) {
  RunConfig cfg;
  Learner learner(cfg);
  std::vector<double> tensor{0.3, 0.7};
  const std::vector<std::uint8_t> short_mask{1};
  EXPECT_THROW(learner.on_post_spike(0, tensor, short_mask), ContractViolation);
  const std::vector<std::uint8_t> mask{1, 1};
  EXPECT_THROW(learner.on_post_spike(99, tensor, mask), ContractViolation);
  cfg.rule = Rule::Nessler;
  EXPECT_THROW(Learner{cfg}, ConfigError);
}
