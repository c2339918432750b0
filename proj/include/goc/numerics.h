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

#ifndef GOC_NUMERICS_H_
#define GOC_NUMERICS_H_

#include <functional>
#include <vector>

namespace goc::numerics {

// Adaptive quadrature of f over [a, b] to absolute tolerance `abs_tol`.
// Returns 0 for an empty or reversed interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

// Solves g(x) = target on [lo, hi] for a monotone g (either direction) by
// bisection. Stops when the bracket is narrower than `x_tol` or after
// `max_iter` halvings. Targets outside [g(lo), g(hi)] clamp to the nearer
// endpoint.
double solve_monotone(const std::function<double(double)>& g, double target,
                      double lo, double hi, double x_tol,
                      int max_iter = 200);

// Grid from start to stop (both included) in n = round((stop - start) / step)
// equal steps, computed as start + (stop - start) * i / n so both endpoints
// are exact. Requires stop >= start and step > 0.
std::vector<double> step_grid(double start, double stop, double step);

}  // namespace goc::numerics

#endif  // GOC_NUMERICS_H_
