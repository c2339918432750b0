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

#include "goc/strategy.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "goc/errors.h"
#include "goc/rng.h"
#include "goc/tradeoff.h"

namespace goc {
namespace {

constexpr int kSelfTestPairs = 10000;
constexpr double kSelfTestStep = 1e-3;
constexpr double kStrictMargin = 1e-12;
constexpr std::uint64_t kSelfTestSeed = 0x5eed0001;

double adversary_value(const AdversaryUtility& u, double m, double p) {
  switch (u.family) {
    case AdversaryFamily::kWeightedSum:
      return u.a * m + u.b * p;
    case AdversaryFamily::kScaledProduct:
      return p * (m + u.c);
  }
  return 0.0;
}

double dc_value(const DcUtility& u, double m, double p) {
  switch (u.family) {
    case DcFamily::kLinearPenalty:
      return p - u.gamma * m;
    case DcFamily::kExponentialDiscount:
      return p * std::exp(-m / u.s);
  }
  return 0.0;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("utility parameter ") + name +
                      " must be positive and finite");
  }
}

double objective(const Envelope& env, const UtilitySpec& spec, double alpha) {
  return spec.adversary(c_alpha(env, alpha), alpha);
}

EtaEntry evaluate_eta(const KernelContext& ctx, const UtilitySpec& spec,
                      std::span<const double> alphas,
                      const EnvelopeOptions& options) {
  const Envelope env = Envelope::build(ctx, options);
  EtaEntry entry;
  entry.eta = ctx.eta();
  entry.best_alphas = best_alpha_set(env, spec, alphas);
  bool first = true;
  for (double a : entry.best_alphas) {
    const double m = c_alpha(env, a);
    const double q = spec.dc(m, a);
    if (first || q < entry.dc_guaranteed_utility) {
      entry.dc_guaranteed_utility = q;
      entry.worst_alpha = a;
      entry.mse = m;
      entry.adversary_utility = spec.adversary(m, a);
      first = false;
    }
  }
  return entry;
}

}  // namespace

std::string_view to_string(AdversaryFamily family) {
  switch (family) {
    case AdversaryFamily::kWeightedSum:
      return "weighted_sum";
    case AdversaryFamily::kScaledProduct:
      return "scaled_product";
  }
  return "";
}

std::string_view to_string(DcFamily family) {
  switch (family) {
    case DcFamily::kLinearPenalty:
      return "linear_penalty";
    case DcFamily::kExponentialDiscount:
      return "exponential_discount";
  }
  return "";
}

AdversaryFamily parse_adversary_family(std::string_view name) {
  if (name == "weighted_sum") return AdversaryFamily::kWeightedSum;
  if (name == "scaled_product") return AdversaryFamily::kScaledProduct;
  throw DomainError("unknown adversary utility family '" + std::string(name) +
                    "' (expected weighted_sum or scaled_product)");
}

DcFamily parse_dc_family(std::string_view name) {
  if (name == "linear_penalty") return DcFamily::kLinearPenalty;
  if (name == "exponential_discount") return DcFamily::kExponentialDiscount;
  throw DomainError("unknown dc utility family '" + std::string(name) +
                    "' (expected linear_penalty or exponential_discount)");
}

UtilitySpec::UtilitySpec(AdversaryUtility adversary_params, DcUtility dc_params,
                         double m_max)
    : adversary_(adversary_params), dc_(dc_params) {
  switch (adversary_.family) {
    case AdversaryFamily::kWeightedSum:
      require_positive(adversary_.a, "a");
      require_positive(adversary_.b, "b");
      break;
    case AdversaryFamily::kScaledProduct:
      require_positive(adversary_.c, "c");
      break;
  }
  switch (dc_.family) {
    case DcFamily::kLinearPenalty:
      require_positive(dc_.gamma, "gamma");
      break;
    case DcFamily::kExponentialDiscount:
      require_positive(dc_.s, "s");
      break;
  }
  require_positive(m_max, "m_max");

  // p is kept away from 0: p*(m + c) is flat in m there.
  CounterRng rng(kSelfTestSeed, 0);
  for (int i = 0; i < kSelfTestPairs; ++i) {
    const double m = m_max * rng.uniform01();
    const double p = kSelfTestStep + (1.0 - 2.0 * kSelfTestStep) * rng.uniform01();
    const double base = adversary(m, p);
    if (!(adversary(m + kSelfTestStep, p) > base + kStrictMargin) ||
        !(adversary(m, p + kSelfTestStep) > base + kStrictMargin)) {
      throw DomainError("adversary utility is not strictly increasing at m = " +
                        std::to_string(m) + ", p = " + std::to_string(p));
    }
    const double dc_base = dc(m, p);
    if (dc(m + kSelfTestStep, p) > dc_base || dc(m, p + kSelfTestStep) < dc_base) {
      throw DomainError("dc utility violates monotonicity at m = " +
                        std::to_string(m) + ", p = " + std::to_string(p));
    }
  }
}

double UtilitySpec::adversary(double mse, double pa) const {
  return adversary_value(adversary_, mse, pa);
}

double UtilitySpec::dc(double mse, double pa) const {
  return dc_value(dc_, mse, pa);
}

std::array<double, 2> UtilitySpec::adversary_gradient(double mse,
                                                      double pa) const {
  switch (adversary_.family) {
    case AdversaryFamily::kWeightedSum:
      return {adversary_.a, adversary_.b};
    case AdversaryFamily::kScaledProduct:
      return {pa, mse + adversary_.c};
  }
  return {0.0, 0.0};
}

double eval_adversary_utility(const UtilitySpec& spec, double mse, double pa) {
  if (!(mse >= 0.0) || !(pa >= 0.0 && pa <= 1.0)) {
    throw DomainError("utility needs mse >= 0 and 0 <= pa <= 1");
  }
  return spec.adversary(mse, pa);
}

double eval_dc_utility(const UtilitySpec& spec, double mse, double pa) {
  if (!(mse >= 0.0) || !(pa >= 0.0 && pa <= 1.0)) {
    throw DomainError("utility needs mse >= 0 and 0 <= pa <= 1");
  }
  return spec.dc(mse, pa);
}

std::vector<double> best_alpha_set(const Envelope& env, const UtilitySpec& spec,
                                   std::span<const double> alphas,
                                   double tie_tol) {
  if (alphas.empty()) throw DomainError("alpha grid is empty");
  std::vector<double> values;
  values.reserve(alphas.size());
  for (double a : alphas) values.push_back(objective(env, spec, a));
  const double best = *std::max_element(values.begin(), values.end());
  const double slack = tie_tol * std::max(1.0, std::abs(best));
  std::vector<double> out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (values[i] >= best - slack) out.push_back(alphas[i]);
  }
  return out;
}

double refine_best_alpha(const Envelope& env, const UtilitySpec& spec,
                         double alpha, double radius) {
  constexpr int kScan = 2000;
  const double lo = std::max(kAlphaMin, alpha - radius);
  const double hi = std::min(1.0, alpha + radius);
  if (!(hi > lo)) return alpha;
  double best_a = alpha;
  double best_v = objective(env, spec, alpha);
  const double step = (hi - lo) / kScan;
  for (int i = 0; i <= kScan; ++i) {
    const double a = i == kScan ? hi : lo + step * i;
    const double v = objective(env, spec, a);
    if (v > best_v) {
      best_v = v;
      best_a = a;
    }
  }
  double a = std::max(lo, best_a - step);
  double b = std::min(hi, best_a + step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    const double x1 = b - inv_phi * (b - a);
    const double x2 = a + inv_phi * (b - a);
    if (objective(env, spec, x1) >= objective(env, spec, x2)) {
      b = x2;
    } else {
      a = x1;
    }
  }
  const double polished = 0.5 * (a + b);
  return objective(env, spec, polished) > best_v ? polished : best_a;
}

std::vector<KernelContext> make_contexts(const HonestNoiseModel& noise,
                                         std::span<const double> etas,
                                         double quad_tol) {
  std::vector<KernelContext> out;
  out.reserve(etas.size());
  for (double eta : etas) out.emplace_back(noise, eta, quad_tol);
  return out;
}

EquilibriumReport solve_equilibrium(std::span<const KernelContext> ctxs,
                                    const UtilitySpec& spec,
                                    std::span<const double> alphas,
                                    const EnvelopeOptions& options,
                                    unsigned workers) {
  if (ctxs.empty()) throw DomainError("eta grid is empty");
  if (alphas.empty()) throw DomainError("alpha grid is empty");

  std::vector<EtaEntry> entries(ctxs.size());
  std::vector<std::exception_ptr> errors(ctxs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ctxs.size(); i = next++) {
      try {
        entries[i] = evaluate_eta(ctxs[i], spec, alphas, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, ctxs.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EquilibriumReport report;
  report.per_eta = std::move(entries);
  for (std::size_t i = 1; i < report.per_eta.size(); ++i) {
    if (report.per_eta[i].dc_guaranteed_utility >
        report.per_eta[report.star_index].dc_guaranteed_utility) {
      report.star_index = i;
    }
  }
  const EtaEntry& star = report.per_eta[report.star_index];
  report.eta_star = star.eta;
  report.adversary_utility_at_eq = star.adversary_utility;
  report.mse_star = star.mse;
  report.pa_star = star.worst_alpha;
  report.at_eta_max = report.per_eta.size() > 1 &&
                      report.star_index + 1 == report.per_eta.size();
  return report;
}

AtomicAdversary build_adversary(const Envelope& env, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in (0, 1]");
  }
  if (!env.context()) {
    throw DomainError("build_adversary needs an envelope built from a kernel");
  }
  const KernelContext& ctx = *env.context();
  const Support support = env.supporting_chord(alpha);
  AtomicAdversary out;
  out.alpha = alpha;
  out.eta = ctx.eta();
  out.touch = support.touch;
  out.q1 = support.q1;
  out.q2 = support.q2;
  if (support.touch) {
    const double z = ctx.k_inv(alpha);
    out.atoms = {{-z, 0.5}, {z, 0.5}};
    return out;
  }
  const double z1 = ctx.k_inv(support.q1);
  const double z2 = ctx.k_inv(support.q2);
  const double span = support.q2 - support.q1;
  const double b1 = (support.q2 - alpha) / (2.0 * span);
  const double b2 = (alpha - support.q1) / (2.0 * span);
  out.atoms = {{-z1, b1}, {-z2, b2}, {z1, b1}, {z2, b2}};
  return out;
}

AdversaryStrategy replicate_gstar(const AtomicAdversary& fstar, int n_nodes) {
  if (n_nodes < 2) throw DomainError("n_nodes must be at least 2");
  return AdversaryStrategy::replicated(AtomDistribution(fstar.atoms),
                                       n_nodes - 1);
}

}  // namespace goc
