#include <envsel/env.hpp>

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "testutil.hpp"

namespace envsel {
namespace {

std::vector<double> exponential_raw(double rate, std::size_t K) {
  std::vector<double> v(K + 1);
  for (std::size_t k = 0; k <= K; ++k) v[k] = std::exp(-rate * static_cast<double>(k));
  return v;
}

TEST(TrapezoidArea, SingleStepGivesHalfHeight) {
  EXPECT_EQ(trapezoid_area(synth_ideal(IdealKind::single_step, 6)), 0.5);
}

TEST(TrapezoidArea, LinearFullGivesHalfRectangle) {
  EXPECT_NEAR(trapezoid_area(synth_ideal(IdealKind::linear_full, 6)), 3.0, 1e-15);
}

TEST(TrapezoidArea, ExponentialGeometricSeries) {
  // Closed form: (1 - e^-2)/2 + sum_{k=1}^{19} (e^{-0.1k} - e^{-2}).
  EXPECT_NEAR(trapezoid_area(synth_exponential(0.1, 20)), 5.9471458415706257, 1e-13);
}

TEST(EnvIndex, ExponentialReferenceValues) {
  EXPECT_NEAR(env_index(synth_exponential(0.1, 20)), 13.755958179563473, 1e-10);
  EXPECT_NEAR(env_index(synth_exponential(0.1, 20)), 13.756, 1e-3);
  EXPECT_NEAR(env_index(synth_exponential(0.1, 50)), 19.338298398919676, 1e-10);
  EXPECT_NEAR(env_index(synth_exponential(0.1, 50)), 19.338, 1e-3);
}

TEST(EnvIndex, LinearDropEqualsKstarExactly) {
  const double i_env = env_index(synth_ideal(IdealKind::linear_to_kstar, 6, 3));
  EXPECT_NEAR(i_env, 3.0, 3.0 * 1e-12);
}

TEST(EnvIndex, AllZeroCurveGivesZero) {
  EXPECT_EQ(env_index(normalize(RawCurve({1.0, 1.0, 1.0}))), 0.0);
}

TEST(SuggestedK, NearestIntegerHalvesUp) {
  EXPECT_EQ(suggested_k(13.756), 14u);
  EXPECT_EQ(suggested_k(3.0), 3u);
  EXPECT_EQ(suggested_k(3.5), 4u);
  EXPECT_EQ(suggested_k(0.0), 0u);
  EXPECT_EQ(suggested_k(0.49), 0u);
  EXPECT_EQ(suggested_k(0.5), 1u);
}

TEST(EnvSummary, FieldsAreConsistent) {
  const ErrorCurve c = synth_exponential(0.1, 20);
  const EnvResult r = env_summary(c);
  EXPECT_DOUBLE_EQ(r.a_ref_one, c.v0() / 2.0);
  EXPECT_DOUBLE_EQ(r.i_env, 2.0 * r.a_hat / c.v0());
  EXPECT_EQ(r.suggested, 14u);
  EXPECT_LE(std::abs(static_cast<double>(r.suggested) - r.i_env), 0.5);
}

TEST(EnvTrace, ExponentialStabilizes) {
  const RawCurve raw(exponential_raw(0.1, 5000));
  const std::vector<std::size_t> ks{20, 50, 500, 5000};
  const std::vector<TracePoint> trace = env_trace(raw, ks);
  ASSERT_EQ(trace.size(), 4u);
  const double expected[] = {13.755958179563473, 19.338298398919676, 20.016663889550099,
                             20.016663889550099};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(trace[i].K, ks[i]);
    EXPECT_NEAR(trace[i].i_env, expected[i], 1e-9);
  }
}

TEST(EnvTrace, ConstantRawCurveIsAllZero) {
  const RawCurve raw(std::vector<double>(31, 4.2));
  for (const TracePoint& p : env_trace(raw, std::vector<std::size_t>{5, 10, 30})) {
    EXPECT_EQ(p.i_env, 0.0);
  }
}

TEST(EnvTrace, LinearFullPrefixGivesK) {
  const ErrorCurve line = synth_ideal(IdealKind::linear_full, 24);
  const RawCurve raw(std::vector<double>(line.values().begin(), line.values().end()));
  const std::vector<TracePoint> trace = env_trace(raw, std::vector<std::size_t>{24});
  EXPECT_NEAR(trace[0].i_env, 24.0, 24.0 * 1e-12);
}

TEST(EnvTrace, RejectsBadTruncationLists) {
  const RawCurve raw(exponential_raw(0.1, 50));
  EXPECT_THROW(env_trace(raw, std::vector<std::size_t>{}), std::invalid_argument);
  EXPECT_THROW(env_trace(raw, std::vector<std::size_t>{51}), std::invalid_argument);
  EXPECT_THROW(env_trace(raw, std::vector<std::size_t>{0}), std::invalid_argument);
  EXPECT_THROW(env_trace(raw, (std::vector<std::size_t>{20, 20})), std::invalid_argument);
  EXPECT_THROW(env_trace(raw, (std::vector<std::size_t>{30, 20})), std::invalid_argument);
}

TEST(EnvIndex, InvariantToLinearScaling) {
  std::mt19937_64 rng(31);
  const double scales[] = {1e-6, 1e-3, 1.0, 1e3, 1e6};
  for (int i = 0; i < 200; ++i) {
    const ErrorCurve c = testutil::random_curve(rng, 120);
    const double base = env_index(c);
    for (double a : scales) {
      std::vector<double> scaled(c.values().begin(), c.values().end());
      for (double& v : scaled) v *= a;
      const double got = env_index(normalize(RawCurve(scaled)));
      EXPECT_NEAR(got, base, 1e-12 * base);
    }
  }
}

TEST(EnvIndex, ZeroExactlyWhenCurveIsZeroElseAtLeastOne) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 400; ++i) {
    const ErrorCurve c = testutil::random_curve(rng, 150, true);
    const double i_env = env_index(c);
    if (c.v0() == 0.0) {
      EXPECT_EQ(i_env, 0.0);
    } else {
      EXPECT_GE(i_env, 1.0);
    }
  }
}

TEST(EnvIndex, BelowChordCurvesStayWithinOneAndK) {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 400; ++i) {
    const std::size_t K = std::uniform_int_distribution<std::size_t>(1, 150)(rng);
    const std::size_t k_star = std::uniform_int_distribution<std::size_t>(1, K)(rng);
    const double i_env = env_index(testutil::random_convex_zero_at(rng, k_star, K));
    EXPECT_GE(i_env, 1.0);
    EXPECT_LE(i_env, static_cast<double>(K) * (1.0 + 1e-12));
  }
}

// The [1, K] range presumes the curve mass stays at or below the straight
// line to (K, 0); a curve hugging V(0) until the last step exceeds K.
TEST(EnvIndex, MassAboveTheChordCanExceedK) {
  EXPECT_DOUBLE_EQ(env_index(normalize(RawCurve({1.0, 1.0, 0.0}))), 3.0);
}

TEST(EnvIndex, EqualsKOnlyOnTheFullLine) {
  for (std::size_t K = 2; K <= 30; ++K) {
    const double full = env_index(synth_ideal(IdealKind::linear_full, K));
    EXPECT_NEAR(full, static_cast<double>(K), static_cast<double>(K) * 1e-12);
  }
  // Any sag below the line strictly lowers the index.
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const ErrorCurve c = testutil::random_curve(rng, 60);
    const std::size_t K = c.K();
    if (K < 2) continue;
    bool on_line = true;
    for (std::size_t k = 0; k <= K && on_line; ++k) {
      const double line = c.v0() * static_cast<double>(K - k) / static_cast<double>(K);
      on_line = std::abs(c[k] - line) <= 1e-12 * c.v0();
    }
    if (!on_line) {
      EXPECT_LT(env_index(c), static_cast<double>(K));
    }
  }
}

TEST(EnvIndex, DominatingCurveHasLargerIndex) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 200; ++i) {
    const ErrorCurve b = testutil::random_curve(rng, 80);
    const ErrorCurve w = testutil::random_convex_zero_at(
        rng, std::uniform_int_distribution<std::size_t>(1, b.K())(rng), b.K());
    // Pointwise max of two curves with the same height and K dominates both.
    std::vector<double> top(b.K() + 1);
    for (std::size_t k = 0; k <= b.K(); ++k) {
      top[k] = std::max(b[k], w[k] * (b.v0() / w.v0()));
    }
    const double i_top = env_index(normalize(RawCurve(top)));
    EXPECT_GE(i_top, env_index(b) * (1.0 - 1e-12));
  }
}

TEST(EnvIndex, ConvexCurveZeroAtKstarStaysInRange) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 300; ++i) {
    const std::size_t K = std::uniform_int_distribution<std::size_t>(2, 80)(rng);
    const std::size_t k_star = std::uniform_int_distribution<std::size_t>(1, K)(rng);
    const double i_env = env_index(testutil::random_convex_zero_at(rng, k_star, K));
    if (k_star == 1) {
      EXPECT_EQ(i_env, 1.0);
    } else {
      EXPECT_GT(i_env, 1.0);
      EXPECT_LE(i_env, static_cast<double>(k_star) * (1.0 + 1e-12));
    }
  }
}

}  // namespace
}  // namespace envsel
