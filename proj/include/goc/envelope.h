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

#ifndef GOC_ENVELOPE_H_
#define GOC_ENVELOPE_H_

#include <optional>
#include <vector>

#include "goc/kernel.h"

namespace goc {

struct GraphPoint {
  double q = 0.0;
  double value = 0.0;
};

struct EnvelopeOptions {
  int grid_size = 4096;
  // Relative; the absolute tolerance is touch_tolerance * max(1, max |h|).
  double touch_tolerance = 1e-8;
  // Extra samples inserted into each grid cell next to a hull vertex.
  int refine_samples = 64;
};

// Result of a supporting-line query at q. For a touch, q1 == q2 == q.
struct Support {
  bool touch = false;
  double q1 = 0.0;
  double q2 = 0.0;
};

// Least concave majorant of h on [0, 1], stored as the vertices of the upper
// convex hull of a sampled graph of h. Immutable once built.
class Envelope {
 public:
  // Hull of h on a uniform grid of grid_size + 1 points (0 and 1 included),
  // refined once around every hull vertex. Requires grid_size >= 33.
  static Envelope build(const KernelContext& ctx,
                        const EnvelopeOptions& options = {});

  // Hull of arbitrary samples; q must span [0, 1]. Without a kernel, h is
  // taken to be the linear interpolant of the samples.
  static Envelope from_samples(std::vector<GraphPoint> samples,
                               double touch_tolerance = 1e-8);

  // Piecewise-linear interpolation between breakpoints. DomainError outside
  // [0, 1].
  double eval(double q) const;
  // h(q) from the kernel, or the sample interpolant.
  double h(double q) const;

  // Touch if eval(q) - h(q) <= touch tolerance; otherwise the hull segment
  // containing q. Requires 0 < q <= 1.
  Support supporting_chord(double q) const;

  // Slope of the first hull segment; the limit of h*(q)/q as q -> 0.
  double right_slope_at_zero() const;

  const std::vector<GraphPoint>& breakpoints() const { return breakpoints_; }
  const std::vector<GraphPoint>& source_grid() const { return source_; }
  // Absolute tolerance used for touch detection.
  double touch_tolerance() const { return touch_abs_; }
  const std::optional<KernelContext>& context() const { return ctx_; }

 private:
  Envelope() = default;
  void build_hull();
  std::size_t segment_index(double q) const;

  std::vector<GraphPoint> breakpoints_;
  std::vector<GraphPoint> source_;
  double touch_abs_ = 0.0;
  std::optional<KernelContext> ctx_;
};

// Upper convex hull (monotone chain) of points sorted by q. Collinear
// interior points are dropped.
std::vector<GraphPoint> upper_hull(const std::vector<GraphPoint>& sorted);

}  // namespace goc

#endif  // GOC_ENVELOPE_H_
