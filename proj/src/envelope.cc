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
#include <string>

#include "goc/errors.h"

namespace goc {
namespace {

double cross(const GraphPoint& o, const GraphPoint& a, const GraphPoint& b) {
  return (a.q - o.q) * (b.value - o.value) - (a.value - o.value) * (b.q - o.q);
}

std::vector<std::size_t> upper_hull_indices(
    const std::vector<GraphPoint>& pts) {
  std::vector<std::size_t> hull;
  hull.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (hull.size() >= 2 &&
           cross(pts[hull[hull.size() - 2]], pts[hull.back()], pts[i]) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  return hull;
}

// Sorts by q and keeps the largest value among equal q.
void sort_and_dedupe(std::vector<GraphPoint>& pts) {
  auto order = [](const GraphPoint& a, const GraphPoint& b) {
    return a.q < b.q || (a.q == b.q && a.value > b.value);
  };
  if (!std::is_sorted(pts.begin(), pts.end(), order)) {
    std::sort(pts.begin(), pts.end(), order);
  }
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const GraphPoint& a, const GraphPoint& b) {
                          return a.q == b.q;
                        }),
            pts.end());
}

void require_finite(const GraphPoint& p) {
  if (!std::isfinite(p.q) || !std::isfinite(p.value)) {
    throw NumericalError("non-finite sample of h at q = " + std::to_string(p.q));
  }
}

double max_abs_value(const std::vector<GraphPoint>& pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, std::abs(p.value));
  return m;
}

}  // namespace

std::vector<GraphPoint> upper_hull(const std::vector<GraphPoint>& sorted) {
  std::vector<GraphPoint> out;
  for (std::size_t i : upper_hull_indices(sorted)) out.push_back(sorted[i]);
  return out;
}

Envelope Envelope::build(const KernelContext& ctx,
                         const EnvelopeOptions& options) {
  if (options.grid_size < 33) throw DomainError("grid_size must be at least 33");
  if (!(options.touch_tolerance > 0.0)) {
    throw DomainError("touch_tolerance must be positive");
  }
  if (options.refine_samples < 0) {
    throw DomainError("refine_samples must be nonnegative");
  }
  const int n = options.grid_size;

  std::vector<double> zs(n + 1);
  std::vector<GraphPoint> grid(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double q = static_cast<double>(i) / n;
    zs[i] = ctx.k_inv(q);
    grid[i] = {q, ctx.nu_eta(zs[i])};
    require_finite(grid[i]);
  }

  std::vector<bool> marked(n, false);
  for (std::size_t v : upper_hull_indices(grid)) {
    if (v > 0) marked[v - 1] = true;
    if (v < static_cast<std::size_t>(n)) marked[v] = true;
  }

  // Refinement samples are exact graph points (k(z), nu(z)), so they need
  // no inversion. z falls as q rises, so t runs downwards to keep q sorted.
  std::vector<GraphPoint> samples;
  const int r = options.refine_samples;
  samples.reserve(grid.size() + static_cast<std::size_t>(r) *
                                    std::count(marked.begin(), marked.end(), true));
  for (int j = 0; j <= n; ++j) {
    samples.push_back(grid[j]);
    if (j == n || !marked[j]) continue;
    for (int t = r; t >= 1; --t) {
      const double z = zs[j + 1] + (zs[j] - zs[j + 1]) * t / (r + 1);
      GraphPoint p{ctx.k_eta(z), ctx.nu_eta(z)};
      require_finite(p);
      samples.push_back(p);
    }
  }
  sort_and_dedupe(samples);

  Envelope env;
  env.source_ = std::move(samples);
  env.touch_abs_ =
      options.touch_tolerance * std::max(1.0, max_abs_value(env.source_));
  env.ctx_ = ctx;
  env.build_hull();
  return env;
}

Envelope Envelope::from_samples(std::vector<GraphPoint> samples,
                                double touch_tolerance) {
  if (samples.size() < 2) throw DomainError("need at least two samples");
  for (const auto& p : samples) require_finite(p);
  sort_and_dedupe(samples);
  if (samples.front().q != 0.0 || samples.back().q != 1.0) {
    throw DomainError("samples must include q = 0 and q = 1");
  }
  Envelope env;
  env.source_ = std::move(samples);
  env.touch_abs_ = touch_tolerance * std::max(1.0, max_abs_value(env.source_));
  env.build_hull();
  return env;
}

void Envelope::build_hull() { breakpoints_ = upper_hull(source_); }

std::size_t Envelope::segment_index(double q) const {
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), q,
      [](double x, const GraphPoint& p) { return x < p.q; });
  std::size_t i = it == breakpoints_.begin()
                      ? 0
                      : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return std::min(i, breakpoints_.size() - 2);
}

double Envelope::eval(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("q outside [0, 1]");
  const std::size_t i = segment_index(q);
  const GraphPoint& a = breakpoints_[i];
  const GraphPoint& b = breakpoints_[i + 1];
  if (q == a.q) return a.value;
  if (q == b.q) return b.value;
  return a.value + (b.value - a.value) * (q - a.q) / (b.q - a.q);
}

double Envelope::h(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("q outside [0, 1]");
  if (ctx_) return ctx_->h_eta(q);
  auto it = std::upper_bound(source_.begin(), source_.end(), q,
                             [](double x, const GraphPoint& p) { return x < p.q; });
  if (it == source_.end()) return source_.back().value;
  const GraphPoint& b = *it;
  const GraphPoint& a = *(it - 1);
  if (q == a.q) return a.value;
  return a.value + (b.value - a.value) * (q - a.q) / (b.q - a.q);
}

Support Envelope::supporting_chord(double q) const {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("q outside (0, 1]");
  if (eval(q) - h(q) <= touch_abs_) return {true, q, q};
  const std::size_t i = segment_index(q);
  return {false, breakpoints_[i].q, breakpoints_[i + 1].q};
}

double Envelope::right_slope_at_zero() const {
  const GraphPoint& a = breakpoints_[0];
  const GraphPoint& b = breakpoints_[1];
  return (b.value - a.value) / (b.q - a.q);
}

}  // namespace goc
