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

#include "goc/oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "goc/errors.h"
#include "goc/numerics.h"
#include "goc/rng.h"

namespace goc {
namespace {

constexpr double kQuadTol = 1e-12;

}  // namespace

TradeoffOracle::TradeoffOracle(HonestNoiseModel noise, double eta,
                               int grid_size, bool include_inner)
    : noise_(std::move(noise)), eta_(eta) {
  if (grid_size < 64) throw DomainError("oracle grid_size must be at least 64");
  if (!(eta_ >= 2.0)) throw DomainError("eta must be at least 2");
  const double d = noise_.delta();
  const double top = (eta_ + 1.0) * d;
  const double inner = (eta_ - 1.0) * d;
  for (int i = 0; i < grid_size; ++i) {
    const double z = top * i / (grid_size - 1);
    if (include_inner || z >= inner) zs_.push_back(z);
  }
  zs_.push_back(inner);
  std::sort(zs_.begin(), zs_.end());
  zs_.erase(std::unique(zs_.begin(), zs_.end()), zs_.end());
  for (double z : zs_) {
    ks_.push_back(k(z));
    nus_.push_back(nu(z));
  }
}

double TradeoffOracle::k(double z) const {
  const double t = eta_ * noise_.delta();
  return std::clamp(noise_.cdf(z + t) - noise_.cdf(z - t), 0.0, 1.0);
}

double TradeoffOracle::nu(double z) const {
  const double d = noise_.delta();
  const double t = eta_ * d;
  const double lo = std::max(z - t, -d);
  const double hi = std::min(z + t, d);
  auto integrand = [&](double x) { return (x + z) * (x + z) * noise_.pdf(x); };
  if (lo < 0.0 && hi > 0.0) {
    // The density may have a kink at 0.
    return numerics::integrate(integrand, lo, 0.0, kQuadTol) +
           numerics::integrate(integrand, 0.0, hi, kQuadTol);
  }
  return numerics::integrate(integrand, lo, hi, kQuadTol);
}

TradeoffOracle::Result TradeoffOracle::max_mse(double alpha) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in (0, 1]");
  }
  Result best{-1.0, {}};
  const std::size_t n = zs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ks_[i] < alpha) continue;
    const double v = nus_[i] / (4.0 * ks_[i]);
    if (v > best.value) best = {v, {{zs_[i], 1.0}}};
  }
  // Pairs that meet PA = alpha with equality. Pairs with both atoms above
  // alpha are never better than their best single atom.
  for (std::size_t i = 0; i < n; ++i) {
    if (ks_[i] < alpha) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (ks_[j] >= alpha) continue;
      const double w = (alpha - ks_[j]) / (ks_[i] - ks_[j]);
      const double v = (w * nus_[i] + (1.0 - w) * nus_[j]) / (4.0 * alpha);
      if (v > best.value) best = {v, {{zs_[i], w}, {zs_[j], 1.0 - w}}};
    }
  }
  if (best.atoms.empty()) throw DomainError("no feasible atom for alpha");
  return best;
}

double TradeoffOracle::three_atom_search(double alpha, std::uint64_t seed,
                                         int restarts, int steps) const {
  CounterRng rng(seed, 0);
  const std::size_t n = zs_.size();
  auto index = [&] {
    return static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n));
  };
  auto score = [&](const std::array<std::size_t, 3>& idx,
                   const std::array<double, 3>& w) {
    double pa = 0.0;
    double num = 0.0;
    for (int a = 0; a < 3; ++a) {
      pa += w[a] * ks_[idx[a]];
      num += w[a] * nus_[idx[a]];
    }
    if (pa < alpha || pa <= 0.0) return -1.0;
    return num / (4.0 * pa);
  };
  auto normalize = [](std::array<double, 3>& w) {
    const double s = w[0] + w[1] + w[2];
    for (double& x : w) x /= s;
  };

  double best = -1.0;
  for (int r = 0; r < restarts; ++r) {
    std::array<std::size_t, 3> idx{index(), index(), index()};
    std::array<double, 3> w{};
    for (double& x : w) x = -std::log1p(-rng.uniform01()) + 1e-12;
    normalize(w);
    double current = score(idx, w);
    for (int s = 0; s < steps; ++s) {
      auto idx2 = idx;
      auto w2 = w;
      const int which = static_cast<int>(rng.uniform01() * 3.0);
      if (rng.uniform01() < 0.5) {
        const long jump = static_cast<long>(rng.uniform01() * 17.0) - 8;
        const long moved = std::clamp(static_cast<long>(idx2[which]) + jump, 0L,
                                      static_cast<long>(n) - 1);
        idx2[which] = static_cast<std::size_t>(moved);
      } else {
        w2[which] = std::max(0.0, w2[which] + 0.1 * (rng.uniform01() - 0.5));
        if (w2[0] + w2[1] + w2[2] <= 0.0) continue;
        normalize(w2);
      }
      const double candidate = score(idx2, w2);
      if (candidate >= current) {
        idx = idx2;
        w = w2;
        current = candidate;
      }
    }
    best = std::max(best, current);
  }
  return best;
}

TradeoffOracle::Outcome TradeoffOracle::evaluate(
    std::span<const Atom> atoms) const {
  double pa = 0.0;
  double num = 0.0;
  for (const Atom& a : atoms) {
    pa += a.weight * k(a.z);
    num += a.weight * nu(a.z);
  }
  if (!(pa > 0.0)) return {0.0, std::numeric_limits<double>::quiet_NaN()};
  return {pa, num / (4.0 * pa)};
}

double oracle_c2(const HonestNoiseModel& noise, double eta, double alpha,
                 int grid_size) {
  return TradeoffOracle(noise, eta, grid_size).max_mse(alpha).value;
}

}  // namespace goc
