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

#include "goc/kernel.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "goc/errors.h"
#include "goc/numerics.h"

namespace goc {
namespace {

constexpr double kInverseTol = 1e-12;
constexpr int kInverseMaxIter = 200;

double truncated_normal_nu(double a, double b, double z, double sigma,
                           double mass) {
  const double s2 = sigma * sigma;
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  const double phi_a = norm * std::exp(-0.5 * a * a / s2);
  const double phi_b = norm * std::exp(-0.5 * b * b / s2);
  const double scale = sigma * std::numbers::sqrt2;
  const double m0 = 0.5 * (std::erf(b / scale) - std::erf(a / scale));
  const double m1 = s2 * (phi_a - phi_b);
  const double m2 = s2 * m0 + s2 * (a * phi_a - b * phi_b);
  return (m2 + 2.0 * z * m1 + z * z * m0) / mass;
}

// Quadrature split at the points where the density has a kink.
double integrate_density(const HonestNoiseModel& noise,
                         const std::function<double(double)>& f, double a,
                         double b, double tol) {
  const double gap = 1e-12 * noise.delta();
  std::vector<double> cuts{a};
  std::vector<double> kinks = noise.table_x();
  if (noise.kind() == NoiseKind::kTriangular) kinks.push_back(0.0);
  std::sort(kinks.begin(), kinks.end());
  for (double x : kinks) {
    if (x > a + gap && x < b - gap) cuts.push_back(x);
  }
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += numerics::integrate(f, cuts[i], cuts[i + 1], tol);
  }
  return total;
}

double piecewise_linear_nu(const std::vector<double>& xs,
                           const std::vector<double>& pdf, double a, double b,
                           double z) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double lo = std::max(a, xs[i]);
    const double hi = std::min(b, xs[i + 1]);
    if (!(hi > lo)) continue;
    const double slope = (pdf[i + 1] - pdf[i]) / (xs[i + 1] - xs[i]);
    total += linear_density_moment(lo, hi, pdf[i] - slope * xs[i], slope, z);
  }
  return total;
}

}  // namespace

double linear_density_moment(double lo, double hi, double c0, double c1,
                             double z) {
  // Substituting t = x + z: t^2 ((c0 - c1 z) + c1 t).
  const double a0 = c0 - c1 * z;
  auto antiderivative = [&](double t) {
    const double t3 = t * t * t;
    return a0 * t3 / 3.0 + c1 * t3 * t / 4.0;
  };
  return antiderivative(hi + z) - antiderivative(lo + z);
}

KernelContext::KernelContext(HonestNoiseModel noise, double eta,
                             double quad_tol, KernelMethod method)
    : noise_(std::move(noise)), eta_(eta), quad_tol_(quad_tol), method_(method) {
  if (!(eta_ >= 2.0) || !std::isfinite(eta_)) {
    throw DomainError("eta must be finite and at least 2");
  }
  if (!(quad_tol_ > 0.0)) throw DomainError("quad_tol must be positive");
}

double KernelContext::checked_z(double z) const {
  const double slack = 1e-12 * std::max(1.0, z_max());
  if (!(z >= z_min() - slack && z <= z_max() + slack)) {
    throw DomainError("z outside [(eta-1)*delta, (eta+1)*delta]");
  }
  return std::clamp(z, z_min(), z_max());
}

double KernelContext::checked_q(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("q outside [0, 1]");
  return q;
}

double KernelContext::k_eta(double z) const {
  z = checked_z(z);
  const double lower = z - eta_ * delta();
  if (method_ == KernelMethod::kQuadrature) {
    return integrate_density(
        noise_, [this](double x) { return noise_.pdf(x); },
        std::max(lower, -delta()), delta(),
        quad_tol_);
  }
  return 1.0 - noise_.cdf(lower);
}

double KernelContext::nu_eta(double z) const {
  z = checked_z(z);
  const double lower = std::max(z - eta_ * delta(), -delta());
  const double upper = delta();
  if (!(upper > lower)) return 0.0;
  if (method_ == KernelMethod::kQuadrature) {
    return integrate_density(
        noise_,
        [this, z](double x) { return (x + z) * (x + z) * noise_.pdf(x); },
        lower, upper, quad_tol_);
  }
  switch (noise_.kind()) {
    case NoiseKind::kUniform:
      return linear_density_moment(lower, upper, 0.5 / delta(), 0.0, z);
    case NoiseKind::kTriangular: {
      const double d2 = delta() * delta();
      double total = 0.0;
      if (lower < 0.0) {
        total += linear_density_moment(lower, 0.0, 1.0 / delta(), 1.0 / d2, z);
      }
      total += linear_density_moment(std::max(lower, 0.0), upper,
                                     1.0 / delta(), -1.0 / d2, z);
      return total;
    }
    case NoiseKind::kTruncatedNormal:
      return truncated_normal_nu(lower, upper, z, noise_.sigma(),
                                 std::erf(delta() / (noise_.sigma() *
                                                     std::numbers::sqrt2)));
    case NoiseKind::kTabulated:
      return piecewise_linear_nu(noise_.table_x(), noise_.table_pdf(), lower,
                                 upper, z);
  }
  return 0.0;
}

double KernelContext::k_inv(double q) const {
  q = checked_q(q);
  if (q == 1.0) return z_min();
  if (q == 0.0) return z_max();
  return numerics::solve_monotone([this](double z) { return k_eta(z); }, q,
                                  z_min(), z_max(), kInverseTol,
                                  kInverseMaxIter);
}

double KernelContext::h_eta(double q) const { return nu_eta(k_inv(q)); }

double KernelContext::conditional_mse_atom(double z) const {
  const double k = k_eta(z);
  if (!(k > 0.0)) {
    throw UndefinedConditionalError(
        "atom is never accepted (k = 0); conditional MSE undefined");
  }
  return nu_eta(z) / (4.0 * k);
}

}  // namespace goc
