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

#ifndef GOC_NOISE_MODEL_H_
#define GOC_NOISE_MODEL_H_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "goc/rng.h"

namespace goc {

enum class NoiseKind { kUniform, kTruncatedNormal, kTriangular, kTabulated };

std::string_view to_string(NoiseKind kind);
// Accepts "uniform", "truncated_normal", "triangular", "tabulated".
NoiseKind parse_noise_kind(std::string_view name);

// Noise of the honest node: a symmetric density supported on [-delta, delta].
//
// Immutable after construction; copies share the (read-only) table of a
// tabulated model, so instances are safe to read from several threads.
class HonestNoiseModel {
 public:
  static HonestNoiseModel uniform(double delta);
  // Normal(0, sigma^2) conditioned on [-delta, delta].
  static HonestNoiseModel truncated_normal(double delta, double sigma);
  // Density (delta - |x|) / delta^2.
  static HonestNoiseModel triangular(double delta);
  // Piecewise-linear density through (xs[i], pdf[i]), zero outside the
  // table, renormalized so that the trapezoidal mass is one. xs must be
  // strictly increasing and lie in [-delta, delta].
  static HonestNoiseModel tabulated(double delta, std::vector<double> xs,
                                    std::vector<double> pdf);
  // Two-column CSV (x, pdf); an optional non-numeric header line is skipped.
  static HonestNoiseModel tabulated_from_csv(double delta,
                                             const std::string& path);

  NoiseKind kind() const { return kind_; }
  double delta() const { return delta_; }
  // Pre-truncation standard deviation; only meaningful for kTruncatedNormal.
  double sigma() const { return sigma_; }

  double pdf(double x) const;
  double cdf(double x) const;
  // Throws DomainError unless 0 <= p <= 1.
  double inv_cdf(double p) const;

  // One draw by the inverse-CDF transform.
  double draw(CounterRng& rng) const { return inv_cdf(rng.uniform01()); }
  std::vector<double> sample(CounterRng& rng, std::size_t count) const;

  // Tabulated grid, empty for the analytic kinds.
  const std::vector<double>& table_x() const;
  const std::vector<double>& table_pdf() const;

 private:
  struct Table;

  HonestNoiseModel(NoiseKind kind, double delta, double sigma,
                   std::shared_ptr<const Table> table);

  NoiseKind kind_;
  double delta_;
  double sigma_;
  // Truncated-normal normalizer; unused otherwise.
  double tn_mass_ = 1.0;
  std::shared_ptr<const Table> table_;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  // Names of the failed checks, in check order.
  std::vector<std::string> violations() const;
};

// Grid size used by `validate`.
inline constexpr int kValidationGridPoints = 1025;

// Checks support, symmetry, normalization, CDF endpoints and strict CDF
// increase on a 1025-point grid over [-delta, delta]. Never throws for a
// constructed model; failures are returned in the report.
ValidationReport validate(const HonestNoiseModel& model);

// Prior of the collected value u: Unif[-m, m].
struct DataModel {
  double m = 1000.0;

  // Requires m > 0 and m >= 100 * delta.
  void validate(double delta) const;
  double draw(CounterRng& rng) const { return m * (2.0 * rng.uniform01() - 1.0); }
};

}  // namespace goc

#endif  // GOC_NOISE_MODEL_H_
