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
#include <cstdint>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "goc/errors.h"

namespace goc::numerics {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  if (!(b > a)) return 0.0;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  // Boost terminates on a relative criterion; tighten it until the reported
  // error estimate meets the absolute tolerance.
  double rel_tol = abs_tol;
  double error = 0.0;
  double value = 0.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    value = Rule::integrate(f, a, b, 20, rel_tol, &error);
    if (!std::isfinite(value)) {
      throw NumericalError("quadrature produced a non-finite value");
    }
    if (error <= abs_tol) break;
    rel_tol *= 0.01;
  }
  return value;
}

double solve_monotone(const std::function<double(double)>& g, double target,
                      double lo, double hi, double x_tol, int max_iter) {
  const double g_lo = g(lo) - target;
  const double g_hi = g(hi) - target;
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    return std::abs(g_lo) <= std::abs(g_hi) ? lo : hi;
  }
  std::uintmax_t iterations = static_cast<std::uintmax_t>(max_iter);
  auto shifted = [&](double x) { return g(x) - target; };
  auto close_enough = [x_tol](double a, double b) {
    return std::abs(b - a) <= x_tol;
  };
  const auto bracket =
      boost::math::tools::bisect(shifted, lo, hi, close_enough, iterations);
  return 0.5 * (bracket.first + bracket.second);
}

std::vector<double> step_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) ||
      !(stop >= start)) {
    throw DomainError("grid needs finite start <= stop and step > 0");
  }
  const double span = stop - start;
  const long n = std::lround(span / step);
  if (n > 100000000) throw DomainError("grid has too many points");
  if (n == 0) return {start};
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    out[static_cast<std::size_t>(i)] = start + span * static_cast<double>(i) / n;
  }
  out.back() = stop;
  return out;
}

}  // namespace goc::numerics
