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

#include "goc/tradeoff.h"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <vector>

#include <gtest/gtest.h>

#include "goc/errors.h"
#include "goc/oracle.h"
#include "test_util.h"

namespace goc {
namespace {

const HonestNoiseModel kUniform = HonestNoiseModel::uniform(1.0);

Envelope uniform2_env() { return Envelope::build(KernelContext(kUniform, 2.0)); }

TEST(CAlpha, UniformExamples) {
  const Envelope env = uniform2_env();
  EXPECT_NEAR(c_alpha(env, 0.5), 19.0 / 12.0, 1e-9);
  EXPECT_NEAR(c_alpha(env, 1.0), 1.0 / 3.0, 1e-12);
  EXPECT_THROW(c_alpha(env, 0.0), DomainError);
  EXPECT_THROW(c_alpha(env, 1.5), DomainError);
}

TEST(CAlpha, ChordRegionAgainstTangency) {
  const double q1 = test_util::uniform2_q1();
  const double h1 = test_util::uniform2_h(q1);
  const double h_star = h1 + (4.0 / 3.0 - h1) * (0.9 - q1) / (1.0 - q1);
  EXPECT_NEAR(c_alpha(uniform2_env(), 0.9), h_star / 3.6, 1e-7);
}

TEST(BuildCurve, Examples) {
  const KernelContext ctx(kUniform, 2.0);
  const std::vector<double> alphas{0.25, 0.5, 0.75, 1.0};
  const TradeoffCurve curve = build_curve(ctx, alphas);
  ASSERT_EQ(curve.values.size(), 4u);
  for (double v : curve.values) EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(curve.values.back(), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(curve.eta, 2.0);
  EXPECT_NEAR(curve.limit_at_zero, 4.0, 1e-3);

  const std::vector<double> one{1.0};
  EXPECT_NEAR(build_curve(ctx, one).values[0], ctx.h_eta(1.0) / 4.0, 1e-12);
  EXPECT_THROW(build_curve(ctx, std::vector<double>{}), DomainError);
  EXPECT_THROW(build_curve(ctx, std::vector<double>{0.0, 0.5}), DomainError);
}

TEST(BuildCurve, NonincreasingOnFineGrid) {
  for (double eta : {2.0, 2.5, 4.0}) {
    const TradeoffCurve c = build_curve(
        KernelContext(HonestNoiseModel::truncated_normal(1.0, 0.4), eta),
        std::vector<double>{0.001, 0.01, 0.1, 0.3, 0.6, 0.9, 1.0});
    for (std::size_t i = 1; i < c.values.size(); ++i) {
      EXPECT_LE(c.values[i], c.values[i - 1]);
      EXPECT_GE(c.values[i], 0.0);
    }
  }
}

TEST(BuildCurve, CarriesNoNodeCount) {
  const TradeoffCurve c = build_curve(KernelContext(kUniform, 2.0),
                                      std::vector<double>{0.5});
  auto [eta, alphas, values, envelope, limit] = c;
  (void)eta;
  (void)alphas;
  (void)values;
  (void)envelope;
  (void)limit;
  static_assert(std::is_aggregate_v<TradeoffCurve>);
}

TEST(ScaledCurve, AlphaTimesCIsConcave) {
  const Envelope env = Envelope::build(
      KernelContext(HonestNoiseModel::truncated_normal(1.0, 0.7), 2.3));
  CounterRng rng(41, 0);
  for (int i = 0; i < 100; ++i) {
    double t[3] = {kAlphaMin + (1 - kAlphaMin) * rng.uniform01(),
                   kAlphaMin + (1 - kAlphaMin) * rng.uniform01(),
                   kAlphaMin + (1 - kAlphaMin) * rng.uniform01()};
    std::sort(t, t + 3);
    if (t[2] - t[0] < 1e-9) continue;
    const double w = (t[1] - t[0]) / (t[2] - t[0]);
    auto f = [&](double a) { return a * c_alpha(env, a); };
    EXPECT_GE(f(t[1]), (1 - w) * f(t[0]) + w * f(t[2]) - 1e-12);
  }
}

TEST(Oracle, KernelsAgreeOnDomain) {
  const TradeoffOracle oracle(kUniform, 2.0, 256);
  for (double z : {1.0, 1.5, 2.0, 2.5, 3.0}) {
    EXPECT_NEAR(oracle.k(z), test_util::uniform2_k(z), 1e-12) << z;
    EXPECT_NEAR(oracle.nu(z), test_util::uniform2_nu(z), 1e-10) << z;
  }
  // Inside (eta-1) delta every honest report is accepted.
  EXPECT_EQ(oracle.k(0.5), 1.0);
  EXPECT_NEAR(oracle.nu(0.5), 1.0 / 3.0 + 0.25, 1e-10);
}

TEST(Oracle, UniformExamples) {
  EXPECT_NEAR(oracle_c2(kUniform, 2.0, 0.5), 19.0 / 12.0, 5e-3);
  EXPECT_NEAR(oracle_c2(kUniform, 2.0, 1.0), 1.0 / 3.0, 5e-3);
}

TEST(Oracle, ChordAttainedByPair) {
  const TradeoffOracle oracle(kUniform, 2.0);
  const auto r = oracle.max_mse(0.9);
  EXPECT_NEAR(r.value, c_alpha(uniform2_env(), 0.9), 5e-3);
  ASSERT_EQ(r.atoms.size(), 2u);
  std::vector<double> zs{r.atoms[0].z, r.atoms[1].z};
  std::sort(zs.begin(), zs.end());
  EXPECT_NEAR(zs[0], 1.0, 1e-12);
  EXPECT_NEAR(zs[1], 3.0 - 2.0 * test_util::uniform2_q1(), 5e-3);
}

TEST(Oracle, MatchesFormulaOnCoarseSet) {
  for (double eta : {2.0, 3.0}) {
    const Envelope env = Envelope::build(KernelContext(kUniform, eta));
    const TradeoffOracle oracle(kUniform, eta, 512);
    for (double alpha : {0.2, 0.6, 1.0}) {
      const double c = c_alpha(env, alpha);
      EXPECT_LE(std::abs(oracle.max_mse(alpha).value - c), 5e-3 * std::max(1.0, c))
          << "eta=" << eta << " alpha=" << alpha;
    }
  }
}

TEST(Oracle, InnerAtomsNeverStrictlyOptimal) {
  for (const auto& noise :
       {kUniform, HonestNoiseModel::truncated_normal(1.0, 0.5)}) {
    const TradeoffOracle with(noise, 2.5, 512, true);
    const TradeoffOracle without(noise, 2.5, 512, false);
    for (int i = 1; i <= 10; ++i) {
      const double alpha = i / 10.0;
      const double a = with.max_mse(alpha).value;
      const double b = without.max_mse(alpha).value;
      EXPECT_LE(a - b, 1e-9 * std::max(1.0, a)) << alpha;
    }
  }
}

TEST(Oracle, ThreeAtomsNeverBeatTwo) {
  const TradeoffOracle oracle(HonestNoiseModel::truncated_normal(1.0, 0.6), 2.0, 256);
  for (double alpha : {0.15, 0.5, 0.85}) {
    const double two = oracle.max_mse(alpha).value;
    const double three = oracle.three_atom_search(alpha, 7, 20, 400);
    EXPECT_LE(three, two + 1e-9 * std::max(1.0, two)) << alpha;
  }
}

TEST(Oracle, EvaluateSymmetricPair) {
  const TradeoffOracle oracle(kUniform, 2.0, 64);
  const std::vector<TradeoffOracle::Atom> atoms{{-2.0, 0.5}, {2.0, 0.5}};
  const auto o = oracle.evaluate(atoms);
  EXPECT_NEAR(o.pa, 0.5, 1e-12);
  EXPECT_NEAR(o.mse, 19.0 / 12.0, 1e-10);
  const std::vector<TradeoffOracle::Atom> far{{5.0, 1.0}};
  EXPECT_EQ(oracle.evaluate(far).pa, 0.0);
  EXPECT_TRUE(std::isnan(oracle.evaluate(far).mse));
}

TEST(Oracle, RejectsBadArguments) {
  EXPECT_THROW(TradeoffOracle(kUniform, 2.0, 10), DomainError);
  EXPECT_THROW(TradeoffOracle(kUniform, 1.0), DomainError);
  const TradeoffOracle oracle(kUniform, 2.0, 64);
  EXPECT_THROW(oracle.max_mse(0.0), DomainError);
  EXPECT_THROW(oracle.max_mse(1.2), DomainError);
}

}  // namespace
}  // namespace goc
