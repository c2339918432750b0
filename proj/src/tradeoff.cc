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
#include <string>

#include "goc/errors.h"

namespace goc {

double c_alpha(const Envelope& env, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in (0, 1]");
  }
  return env.eval(alpha) / (4.0 * alpha);
}

TradeoffCurve build_curve(const KernelContext& ctx,
                          std::span<const double> alphas,
                          const EnvelopeOptions& options) {
  return build_curve(Envelope::build(ctx, options), alphas);
}

TradeoffCurve build_curve(const Envelope& env, std::span<const double> alphas) {
  if (alphas.empty()) throw DomainError("alpha grid is empty");
  TradeoffCurve curve{
      .eta = env.context() ? env.context()->eta() : 0.0,
      .alphas = {alphas.begin(), alphas.end()},
      .values = {},
      .envelope = env,
      .limit_at_zero = env.right_slope_at_zero() / 4.0,
  };
  curve.values.reserve(alphas.size());
  for (double a : alphas) curve.values.push_back(c_alpha(env, a));

  std::vector<std::size_t> order(alphas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return alphas[a] < alphas[b];
  });
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t i = order[r];
    if (!(curve.values[i] >= 0.0)) {
      throw NumericalError("negative c at alpha = " + std::to_string(alphas[i]));
    }
    if (r == 0) continue;
    const std::size_t prev = order[r - 1];
    const double slack = 1e-12 * std::max(1.0, curve.values[prev]);
    if (curve.values[i] > curve.values[prev] + slack) {
      throw NumericalError("c increases between alpha = " +
                           std::to_string(alphas[prev]) + " and " +
                           std::to_string(alphas[i]));
    }
  }
  return curve;
}

}  // namespace goc
