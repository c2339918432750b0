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

#ifndef GOC_TRADEOFF_H_
#define GOC_TRADEOFF_H_

#include <span>
#include <vector>

#include "goc/envelope.h"
#include "goc/kernel.h"

namespace goc {

// Smallest alpha reported on a curve; c is only a limit at 0.
inline constexpr double kAlphaMin = 1e-3;

// Largest MSE the adversary can force while keeping PA >= alpha:
// c(alpha) = h*(alpha) / (4 alpha). Requires 0 < alpha <= 1.
double c_alpha(const Envelope& env, double alpha);

// c(alpha) on a grid. Note there is no node count anywhere in this type:
// the curve is the same for every N >= 2.
struct TradeoffCurve {
  double eta = 0.0;
  std::vector<double> alphas;
  std::vector<double> values;
  Envelope envelope;
  // lim c(alpha) as alpha -> 0, i.e. the right slope of h* at 0 over 4.
  double limit_at_zero = 0.0;
};

// Builds the envelope and evaluates c on `alphas` (nonempty, within (0, 1]).
// Throws NumericalError if c is negative or fails to be nonincreasing.
TradeoffCurve build_curve(const KernelContext& ctx,
                          std::span<const double> alphas,
                          const EnvelopeOptions& options = {});
TradeoffCurve build_curve(const Envelope& env, std::span<const double> alphas);

}  // namespace goc

#endif  // GOC_TRADEOFF_H_
