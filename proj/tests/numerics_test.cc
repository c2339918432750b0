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

#include "goc/numerics.h"

#include <cmath>

#include <gtest/gtest.h>

#include "goc/errors.h"

namespace goc::numerics {
namespace {

TEST(Integrate, Polynomial) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0, 1e-12), 9.0,
              1e-12);
}

TEST(Integrate, Gaussian) {
  const double v = integrate([](double x) { return std::exp(-x * x); }, -1.0,
                             1.0, 1e-12);
  EXPECT_NEAR(v, std::sqrt(M_PI) * std::erf(1.0), 1e-12);
}

TEST(Integrate, EmptyInterval) {
  EXPECT_EQ(integrate([](double) { return 1.0; }, 1.0, 1.0, 1e-10), 0.0);
  EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 1.0, 1e-10), 0.0);
}

TEST(SolveMonotone, BothDirections) {
  EXPECT_NEAR(solve_monotone([](double x) { return x * x * x; }, 8.0, 0.0, 5.0,
                             1e-13),
              2.0, 1e-12);
  EXPECT_NEAR(solve_monotone([](double x) { return -x; }, -0.25, 0.0, 1.0,
                             1e-13),
              0.25, 1e-12);
}

TEST(SolveMonotone, ClampsOutsideRange) {
  EXPECT_EQ(solve_monotone([](double x) { return x; }, 5.0, 0.0, 1.0, 1e-12), 1.0);
  EXPECT_EQ(solve_monotone([](double x) { return x; }, -5.0, 0.0, 1.0, 1e-12), 0.0);
}

TEST(StepGrid, EndpointsExact) {
  const auto g = step_grid(0.001, 1.0, 0.001);
  ASSERT_EQ(g.size(), 1000u);
  EXPECT_EQ(g.front(), 0.001);
  EXPECT_EQ(g.back(), 1.0);
  const auto e = step_grid(2.0, 8.0, 0.01);
  EXPECT_EQ(e.size(), 601u);
  EXPECT_EQ(e[400], 6.0);
}

TEST(StepGrid, SinglePoint) {
  const auto g = step_grid(2.0, 2.0, 0.5);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], 2.0);
}

TEST(StepGrid, RejectsBadInput) {
  EXPECT_THROW(step_grid(1.0, 0.0, 0.1), DomainError);
  EXPECT_THROW(step_grid(0.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(step_grid(0.0, 1.0, 1e-12), DomainError);
}

}  // namespace
}  // namespace goc::numerics
