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

#ifndef GOC_STRATEGY_H_
#define GOC_STRATEGY_H_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "goc/envelope.h"
#include "goc/joint_strategy.h"
#include "goc/kernel.h"

namespace goc {

enum class AdversaryFamily {
  kWeightedSum,    // a*m + b*p
  kScaledProduct,  // p*(m + c)
};
enum class DcFamily {
  kLinearPenalty,        // p - gamma*m
  kExponentialDiscount,  // p*exp(-m/s)
};

std::string_view to_string(AdversaryFamily family);
std::string_view to_string(DcFamily family);
// "weighted_sum" / "scaled_product".
AdversaryFamily parse_adversary_family(std::string_view name);
// "linear_penalty" / "exponential_discount".
DcFamily parse_dc_family(std::string_view name);

struct AdversaryUtility {
  AdversaryFamily family = AdversaryFamily::kScaledProduct;
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
};

struct DcUtility {
  DcFamily family = DcFamily::kLinearPenalty;
  double gamma = 1.0;
  double s = 1.0;
};

// Utilities of both players as functions of (MSE, PA).
class UtilitySpec {
 public:
  // Validates the parameters and runs the monotonicity self-test on 10^4
  // deterministic pairs in [0, m_max] x [0, 1]. Throws DomainError.
  UtilitySpec(AdversaryUtility adversary, DcUtility dc, double m_max = 100.0);

  double adversary(double mse, double pa) const;
  double dc(double mse, double pa) const;
  // (dQ_AD/dm, dQ_AD/dp).
  std::array<double, 2> adversary_gradient(double mse, double pa) const;

  const AdversaryUtility& adversary_params() const { return adversary_; }
  const DcUtility& dc_params() const { return dc_; }

 private:
  AdversaryUtility adversary_;
  DcUtility dc_;
};

// Q_AD(mse, pa); requires mse >= 0 and 0 <= pa <= 1.
double eval_adversary_utility(const UtilitySpec& spec, double mse, double pa);
double eval_dc_utility(const UtilitySpec& spec, double mse, double pa);

inline constexpr double kTieTolerance = 1e-9;

// Grid alphas whose Q_AD(c(alpha), alpha) is within tie_tol (relative to
// max(1, |max|)) of the grid maximum, in grid order.
std::vector<double> best_alpha_set(const Envelope& env, const UtilitySpec& spec,
                                   std::span<const double> alphas,
                                   double tie_tol = kTieTolerance);

// Maximizes Q_AD(c(alpha), alpha) over the continuum near a grid optimum:
// a dense scan of [alpha - radius, alpha + radius] intersected with
// [kAlphaMin, 1] followed by a golden-section polish.
double refine_best_alpha(const Envelope& env, const UtilitySpec& spec,
                         double alpha, double radius);

struct EtaEntry {
  double eta = 0.0;
  std::vector<double> best_alphas;
  // min over best_alphas of Q_DC(c(alpha), alpha), and where it is attained.
  double dc_guaranteed_utility = 0.0;
  double worst_alpha = 0.0;
  double mse = 0.0;
  double adversary_utility = 0.0;
};

struct EquilibriumReport {
  double eta_star = 0.0;
  std::size_t star_index = 0;
  std::vector<EtaEntry> per_eta;
  double adversary_utility_at_eq = 0.0;
  double mse_star = 0.0;
  double pa_star = 0.0;
  // eta_star is the largest eta of a grid with more than one point.
  bool at_eta_max = false;
};

std::vector<KernelContext> make_contexts(const HonestNoiseModel& noise,
                                         std::span<const double> etas,
                                         double quad_tol = 1e-10);

// eta* = argmax over the contexts (in order) of the guaranteed DC utility;
// ties go to the earliest entry. workers = 0 uses the hardware concurrency.
EquilibriumReport solve_equilibrium(std::span<const KernelContext> ctxs,
                                    const UtilitySpec& spec,
                                    std::span<const double> alphas,
                                    const EnvelopeOptions& options = {},
                                    unsigned workers = 1);

// Optimal single-adversary noise for a target PA. Touch case: atoms
// -z, +z with z = k^-1(alpha), weights 1/2. Chord case: -z1, -z2, +z1, +z2
// with weights b1, b2, b1, b2.
struct AtomicAdversary {
  std::vector<Atom> atoms;
  double alpha = 0.0;
  double eta = 0.0;
  bool touch = true;
  double q1 = 0.0;
  double q2 = 0.0;
};

// Requires an envelope built from a kernel and 0 < alpha <= 1.
AtomicAdversary build_adversary(const Envelope& env, double alpha);

// All n_nodes - 1 adversaries report one shared draw of fstar.
AdversaryStrategy replicate_gstar(const AtomicAdversary& fstar, int n_nodes);

}  // namespace goc

#endif  // GOC_STRATEGY_H_
