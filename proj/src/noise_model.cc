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

#include "goc/noise_model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "goc/errors.h"
#include "goc/numerics.h"

namespace goc {

struct HonestNoiseModel::Table {
  std::vector<double> xs;
  std::vector<double> pdf;  // normalized
  std::vector<double> cum;  // cdf at xs
};

namespace {

constexpr double kInvCdfTol = 1e-12;

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw DomainError("noise half-width delta must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kUniform:
      return "uniform";
    case NoiseKind::kTruncatedNormal:
      return "truncated_normal";
    case NoiseKind::kTriangular:
      return "triangular";
    case NoiseKind::kTabulated:
      return "tabulated";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "uniform") return NoiseKind::kUniform;
  if (name == "truncated_normal" || name == "truncated-normal") {
    return NoiseKind::kTruncatedNormal;
  }
  if (name == "triangular") return NoiseKind::kTriangular;
  if (name == "tabulated") return NoiseKind::kTabulated;
  throw DomainError("unknown noise kind '" + std::string(name) + "'");
}

HonestNoiseModel::HonestNoiseModel(NoiseKind kind, double delta, double sigma,
                                   std::shared_ptr<const Table> table)
    : kind_(kind), delta_(delta), sigma_(sigma), table_(std::move(table)) {
  if (kind_ == NoiseKind::kTruncatedNormal) {
    tn_mass_ = std::erf(delta_ / (sigma_ * std::numbers::sqrt2));
  }
}

HonestNoiseModel HonestNoiseModel::uniform(double delta) {
  require_delta(delta);
  return HonestNoiseModel(NoiseKind::kUniform, delta, 0.0, nullptr);
}

HonestNoiseModel HonestNoiseModel::truncated_normal(double delta, double sigma) {
  require_delta(delta);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("truncated_normal sigma must be positive and finite");
  }
  return HonestNoiseModel(NoiseKind::kTruncatedNormal, delta, sigma, nullptr);
}

HonestNoiseModel HonestNoiseModel::triangular(double delta) {
  require_delta(delta);
  return HonestNoiseModel(NoiseKind::kTriangular, delta, 0.0, nullptr);
}

HonestNoiseModel HonestNoiseModel::tabulated(double delta,
                                             std::vector<double> xs,
                                             std::vector<double> pdf) {
  require_delta(delta);
  if (xs.size() != pdf.size() || xs.size() < 2) {
    throw DomainError("tabulated noise needs at least two (x, pdf) rows");
  }
  const double slack = 1e-12 * delta;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(pdf[i])) {
      throw DomainError("tabulated noise contains a non-finite value");
    }
    if (pdf[i] < 0.0) throw DomainError("tabulated pdf must be nonnegative");
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw DomainError("tabulated x values must be strictly increasing");
    }
  }
  if (xs.front() < -delta - slack || xs.back() > delta + slack) {
    throw DomainError("tabulated x values must lie in [-delta, delta]");
  }
  xs.front() = std::max(xs.front(), -delta);
  xs.back() = std::min(xs.back(), delta);

  auto table = std::make_shared<Table>();
  table->cum.assign(xs.size(), 0.0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    table->cum[i] =
        table->cum[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * (xs[i] - xs[i - 1]);
  }
  const double total = table->cum.back();
  if (!(total > 0.0)) throw DomainError("tabulated pdf has zero mass");
  for (auto& p : pdf) p /= total;
  for (auto& c : table->cum) c /= total;
  table->cum.back() = 1.0;
  table->xs = std::move(xs);
  table->pdf = std::move(pdf);
  return HonestNoiseModel(NoiseKind::kTabulated, delta, 0.0, std::move(table));
}

HonestNoiseModel HonestNoiseModel::tabulated_from_csv(double delta,
                                                      const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tabulated noise file '" + path + "'");
  std::vector<double> xs, pdf;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x = 0.0, p = 0.0;
    if (!(fields >> x >> p)) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw DomainError("malformed row in '" + path + "': " + line);
    }
    first = false;
    xs.push_back(x);
    pdf.push_back(p);
  }
  return tabulated(delta, std::move(xs), std::move(pdf));
}

double HonestNoiseModel::pdf(double x) const {
  if (std::abs(x) > delta_) return 0.0;
  switch (kind_) {
    case NoiseKind::kUniform:
      return 0.5 / delta_;
    case NoiseKind::kTruncatedNormal: {
      const double t = x / sigma_;
      return std::exp(-0.5 * t * t) /
             (sigma_ * std::sqrt(2.0 * std::numbers::pi) * tn_mass_);
    }
    case NoiseKind::kTriangular:
      return (delta_ - std::abs(x)) / (delta_ * delta_);
    case NoiseKind::kTabulated: {
      const auto& xs = table_->xs;
      if (x < xs.front() || x > xs.back()) return 0.0;
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      if (it == xs.end()) return table_->pdf.back();
      const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
      const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
      return (1.0 - w) * table_->pdf[i] + w * table_->pdf[i + 1];
    }
  }
  return 0.0;
}

double HonestNoiseModel::cdf(double x) const {
  if (x <= -delta_) return 0.0;
  if (x >= delta_) return 1.0;
  switch (kind_) {
    case NoiseKind::kUniform:
      return (x + delta_) / (2.0 * delta_);
    case NoiseKind::kTruncatedNormal:
      return 0.5 + 0.5 * std::erf(x / (sigma_ * std::numbers::sqrt2)) / tn_mass_;
    case NoiseKind::kTriangular: {
      const double d2 = 2.0 * delta_ * delta_;
      if (x < 0.0) return (delta_ + x) * (delta_ + x) / d2;
      return 1.0 - (delta_ - x) * (delta_ - x) / d2;
    }
    case NoiseKind::kTabulated: {
      const auto& xs = table_->xs;
      if (x <= xs.front()) return 0.0;
      if (x >= xs.back()) return 1.0;
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
      const double dx = x - xs[i];
      const double slope =
          (table_->pdf[i + 1] - table_->pdf[i]) / (xs[i + 1] - xs[i]);
      return table_->cum[i] + dx * (table_->pdf[i] + 0.5 * slope * dx);
    }
  }
  return 0.0;
}

double HonestNoiseModel::inv_cdf(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("inv_cdf requires 0 <= p <= 1");
  }
  if (p == 0.0) return -delta_;
  if (p == 1.0) return delta_;
  switch (kind_) {
    case NoiseKind::kUniform:
      return -delta_ + 2.0 * delta_ * p;
    case NoiseKind::kTruncatedNormal: {
      const double x = sigma_ * std::numbers::sqrt2 *
                       boost::math::erf_inv((2.0 * p - 1.0) * tn_mass_);
      return std::clamp(x, -delta_, delta_);
    }
    case NoiseKind::kTriangular:
      if (p < 0.5) return -delta_ + delta_ * std::sqrt(2.0 * p);
      return delta_ - delta_ * std::sqrt(2.0 * (1.0 - p));
    case NoiseKind::kTabulated:
      return numerics::solve_monotone([this](double x) { return cdf(x); }, p,
                                      -delta_, delta_, kInvCdfTol);
  }
  return 0.0;
}

std::vector<double> HonestNoiseModel::sample(CounterRng& rng,
                                             std::size_t count) const {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw(rng));
  return out;
}

const std::vector<double>& HonestNoiseModel::table_x() const {
  static const std::vector<double> kEmpty;
  return table_ ? table_->xs : kEmpty;
}

const std::vector<double>& HonestNoiseModel::table_pdf() const {
  static const std::vector<double> kEmpty;
  return table_ ? table_->pdf : kEmpty;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

std::vector<std::string> ValidationReport::violations() const {
  std::vector<std::string> names;
  for (const auto& c : checks) {
    if (!c.passed) names.push_back(c.name);
  }
  return names;
}

ValidationReport validate(const HonestNoiseModel& model) {
  const double delta = model.delta();
  const int n = kValidationGridPoints;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = -delta + 2.0 * delta * i / (n - 1);
  }
  ValidationReport report;

  {
    bool ok = true;
    std::ostringstream detail;
    for (double x : grid) {
      if (!(model.pdf(x) >= 0.0)) {
        ok = false;
        detail << "negative pdf at x=" << x << "; ";
        break;
      }
    }
    for (int j = 1; j <= 8 && ok; ++j) {
      const double x = delta * (1.0 + j / 8.0);
      if (model.pdf(x) != 0.0 || model.pdf(-x) != 0.0) {
        ok = false;
        detail << "nonzero pdf outside [-delta, delta] at |x|=" << x;
      }
    }
    report.checks.push_back({"support", ok, detail.str()});
  }

  {
    double peak = 0.0;
    double worst = 0.0;
    double worst_x = 0.0;
    for (double x : grid) {
      const double p = model.pdf(x);
      peak = std::max(peak, p);
      const double diff = std::abs(p - model.pdf(-x));
      if (diff > worst) {
        worst = diff;
        worst_x = x;
      }
    }
    const bool ok = worst <= 1e-9 * std::max(1.0, peak);
    std::ostringstream detail;
    if (!ok) detail << "|pdf(x) - pdf(-x)| = " << worst << " at x=" << worst_x;
    report.checks.push_back({"symmetry", ok, detail.str()});
  }

  {
    const double mass = numerics::integrate(
        [&model](double x) { return model.pdf(x); }, -delta, delta, 1e-11);
    const bool ok = std::abs(mass - 1.0) <= 1e-8;
    std::ostringstream detail;
    if (!ok) detail << "integral of pdf = " << mass;
    report.checks.push_back({"normalization", ok, detail.str()});
  }

  {
    const double lo = model.cdf(-delta);
    const double hi = model.cdf(delta);
    const bool ok = std::abs(lo) <= 1e-12 && std::abs(hi - 1.0) <= 1e-12;
    std::ostringstream detail;
    if (!ok) detail << "cdf(-delta) = " << lo << ", cdf(delta) = " << hi;
    report.checks.push_back({"cdf_endpoints", ok, detail.str()});
  }

  {
    bool ok = true;
    std::ostringstream detail;
    double prev = model.cdf(grid[0]);
    for (int i = 1; i < n; ++i) {
      const double cur = model.cdf(grid[i]);
      if (!(cur - prev > 1e-12)) {
        ok = false;
        detail << "cdf not strictly increasing on [" << grid[i - 1] << ", "
               << grid[i] << "]";
        break;
      }
      prev = cur;
    }
    report.checks.push_back({"cdf_strictly_increasing", ok, detail.str()});
  }
  return report;
}

void DataModel::validate(double delta) const {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw DomainError("data half-width m must be positive and finite");
  }
  if (m < 100.0 * delta) {
    throw DomainError("data half-width m must be at least 100 * delta");
  }
}

}  // namespace goc
