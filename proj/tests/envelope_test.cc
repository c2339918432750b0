/*
 * Copyright 2026 The goc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "goc/envelope.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "goc/errors.h"
#include "test_util.h"

namespace goc {
namespace {

KernelContext uniform2() { return KernelContext(HonestNoiseModel::uniform(1.0), 2.0); }

class EnvelopeShapes : public ::testing::TestWithParam<int> {
 protected:
  KernelContext context() const {
    switch (GetParam()) {
      case 0:
        return uniform2();
      case 1:
        return KernelContext(HonestNoiseModel::truncated_normal(1.0, 0.5), 2.5);
      case 2:
        return KernelContext(HonestNoiseModel::triangular(1.0), 3.0);
      default:
        return KernelContext(HonestNoiseModel::truncated_normal(1.0, 1.0), 2.0);
    }
  }
};

TEST_P(EnvelopeShapes, BreakpointsSpanUnitIntervalAndAreConcave) {
  const Envelope env = Envelope::build(context());
  const auto& b = env.breakpoints();
  ASSERT_GE(b.size(), 2u);
  EXPECT_EQ(b.front().q, 0.0);
  EXPECT_EQ(b.back().q, 1.0);
  double prev_slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < b.size(); ++i) {
    ASSERT_GT(b[i].q, b[i - 1].q);
    const double slope = (b[i].value - b[i - 1].value) / (b[i].q - b[i - 1].q);
    ASSERT_LE(slope, prev_slope + 1e-9);
    prev_slope = slope;
  }
}

TEST_P(EnvelopeShapes, MajorizesOnGrid) {
  const KernelContext ctx = context();
  const Envelope env = Envelope::build(ctx);
  for (int i = 0; i <= 4096; ++i) {
    const double q = i / 4096.0;
    ASSERT_GE(env.eval(q), ctx.h_eta(q) - 1e-12) << q;
  }
  for (const auto& p : env.source_grid()) ASSERT_GE(env.eval(p.q), p.value - 1e-12);
}

TEST_P(EnvelopeShapes, ConcaveAtRandomTriples) {
  const Envelope env = Envelope::build(context());
  CounterRng rng(31, GetParam());
  for (int i = 0; i < 1000; ++i) {
    double t[3] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
    std::sort(t, t + 3);
    if (t[2] - t[0] < 1e-12) continue;
    const double w = (t[1] - t[0]) / (t[2] - t[0]);
    const double chord = (1.0 - w) * env.eval(t[0]) + w * env.eval(t[2]);
    ASSERT_GE(env.eval(t[1]), chord - 1e-12);
  }
}

TEST_P(EnvelopeShapes, EndpointsTouch) {
  const KernelContext ctx = context();
  const Envelope env = Envelope::build(ctx);
  EXPECT_NEAR(env.eval(0.0), ctx.h_eta(0.0), 1e-15);
  EXPECT_NEAR(env.eval(1.0), ctx.h_eta(1.0), 1e-15);
  EXPECT_TRUE(env.supporting_chord(1.0).touch);
}

TEST_P(EnvelopeShapes, IdempotentOnItsOwnSamples) {
  const Envelope env = Envelope::build(context());
  const Envelope again = Envelope::from_samples(env.source_grid());
  const Envelope hull_of_hull = Envelope::from_samples(env.breakpoints());
  ASSERT_EQ(again.breakpoints().size(), env.breakpoints().size());
  for (std::size_t i = 0; i < env.breakpoints().size(); ++i) {
    EXPECT_EQ(again.breakpoints()[i].q, env.breakpoints()[i].q);
    EXPECT_NEAR(again.breakpoints()[i].value, env.breakpoints()[i].value, 1e-12);
  }
  for (int i = 0; i <= 1000; ++i) {
    const double q = i / 1000.0;
    ASSERT_NEAR(hull_of_hull.eval(q), env.eval(q), 1e-12);
  }
}

TEST_P(EnvelopeShapes, ChordMatchesLineThroughEndpoints) {
  const Envelope env = Envelope::build(context());
  for (int i = 1; i <= 200; ++i) {
    const double q = i / 200.0;
    const Support s = env.supporting_chord(q);
    if (s.touch) {
      EXPECT_EQ(s.q1, q);
      continue;
    }
    ASSERT_LE(s.q1, q);
    ASSERT_GE(s.q2, q);
    const double h1 = env.h(s.q1);
    const double h2 = env.h(s.q2);
    for (int j = 0; j <= 10; ++j) {
      const double x = s.q1 + (s.q2 - s.q1) * j / 10.0;
      const double line = (h2 - h1) / (s.q2 - s.q1) * (x - s.q1) + h1;
      ASSERT_NEAR(env.eval(x), line, 1e-10) << "q=" << q << " x=" << x;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Kernels, EnvelopeShapes, ::testing::Values(0, 1, 2, 3));

TEST(UniformEnvelope, ValuesBelowTangency) {
  const Envelope env = Envelope::build(uniform2());
  EXPECT_NEAR(env.eval(0.5), 19.0 / 6.0, 1e-9);
  EXPECT_TRUE(env.supporting_chord(0.5).touch);
  for (int i = 1; i < 70; ++i) {
    const double q = i / 100.0;
    EXPECT_NEAR(env.eval(q), test_util::uniform2_h(q), 1e-9) << q;
  }
}

TEST(UniformEnvelope, ChordAgainstIndependentTangency) {
  const double q1 = test_util::uniform2_q1();
  ASSERT_GT(q1, 0.77);
  ASSERT_LT(q1, 0.80);
  const Envelope env = Envelope::build(uniform2());
  const Support s = env.supporting_chord(0.9);
  EXPECT_FALSE(s.touch);
  EXPECT_EQ(s.q2, 1.0);
  EXPECT_GE(s.q1, 0.77);
  EXPECT_LE(s.q1, 0.80);
  EXPECT_NEAR(s.q1, q1, 1e-4);
  const double h1 = test_util::uniform2_h(q1);
  const double line = h1 + (4.0 / 3.0 - h1) * (0.9 - q1) / (1.0 - q1);
  EXPECT_NEAR(env.eval(0.9), line, 1e-7);
}

TEST(UniformEnvelope, RightSlopeAtZero) {
  // h'(0) = -16 + 32.
  EXPECT_NEAR(Envelope::build(uniform2()).right_slope_at_zero(), 16.0, 1e-3);
}

TEST(ConcaveKernel, EveryGridPointIsABreakpoint) {
  const KernelContext ctx(HonestNoiseModel::truncated_normal(1.0, 0.3), 3.0);
  EnvelopeOptions opts;
  opts.refine_samples = 0;
  const Envelope env = Envelope::build(ctx, opts);
  ASSERT_EQ(env.breakpoints().size(), 4097u);
  for (int i = 0; i <= 4096; ++i) {
    const double q = i / 4096.0;
    ASSERT_EQ(env.breakpoints()[i].q, q);
    ASSERT_NEAR(env.eval(q), ctx.h_eta(q), 1e-12);
    if (i > 0) {
      ASSERT_TRUE(env.supporting_chord(q).touch);
    }
  }
}

TEST(EnvelopeBuild, RejectsBadOptions) {
  EnvelopeOptions opts;
  opts.grid_size = 2;
  EXPECT_THROW(Envelope::build(uniform2(), opts), DomainError);
  opts = {};
  opts.touch_tolerance = 0.0;
  EXPECT_THROW(Envelope::build(uniform2(), opts), DomainError);
  opts = {};
  opts.refine_samples = -1;
  EXPECT_THROW(Envelope::build(uniform2(), opts), DomainError);
}

TEST(EnvelopeQueries, DomainErrors) {
  const Envelope env = Envelope::build(uniform2());
  EXPECT_THROW(env.eval(-0.01), DomainError);
  EXPECT_THROW(env.eval(1.01), DomainError);
  EXPECT_THROW(env.supporting_chord(0.0), DomainError);
}

TEST(FromSamples, Validation) {
  EXPECT_THROW(Envelope::from_samples({{0.0, 0.0}}), DomainError);
  EXPECT_THROW(Envelope::from_samples({{0.1, 0.0}, {1.0, 1.0}}), DomainError);
  EXPECT_THROW(Envelope::from_samples({{0.0, 0.0}, {0.5, NAN}, {1.0, 1.0}}),
               NumericalError);
}

TEST(FromSamples, InterpolatedSource) {
  const Envelope env =
      Envelope::from_samples({{1.0, 1.0}, {0.0, 0.0}, {0.5, 0.2}, {0.25, 0.5}});
  EXPECT_FALSE(env.context().has_value());
  EXPECT_NEAR(env.h(0.375), 0.35, 1e-15);
  EXPECT_NEAR(env.eval(0.5), 2.0 / 3.0, 1e-15);
  const Support s = env.supporting_chord(0.5);
  EXPECT_FALSE(s.touch);
  EXPECT_EQ(s.q1, 0.25);
  EXPECT_EQ(s.q2, 1.0);
}

TEST(UpperHull, SmallCases) {
  EXPECT_EQ(upper_hull({{0, 0}, {0.5, 0.2}, {1, 0}}).size(), 3u);
  EXPECT_EQ(upper_hull({{0, 0}, {0.5, -1}, {1, 0}}).size(), 2u);
  EXPECT_EQ(upper_hull({{0, 0}, {0.5, 0.5}, {1, 1}}).size(), 2u);
}

}  // namespace
}  // namespace goc
