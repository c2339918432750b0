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

#ifndef GOC_KERNEL_H_
#define GOC_KERNEL_H_

#include "goc/noise_model.h"

namespace goc {

enum class KernelMethod {
  // Closed forms for every built-in kind (tabulated densities are piecewise
  // linear, so their moments are exact too).
  kAnalytic,
  // Adaptive quadrature of the density for both k and nu.
  kQuadrature,
};

// Acceptance and error kernels for a single adversarial atom at distance z
// from the truth, with acceptance threshold eta * delta:
//
//   k(z)  = P(n_h >= z - eta*delta)                 acceptance probability
//   nu(z) = E[(n_h + z)^2 ; n_h >= z - eta*delta]   unnormalized squared error
//   h(q)  = nu(k^-1(q)),  q in [0, 1]
//
// on the domain z in [(eta-1)*delta, (eta+1)*delta]. k is strictly
// decreasing there whenever the noise CDF is strictly increasing.
class KernelContext {
 public:
  KernelContext(HonestNoiseModel noise, double eta, double quad_tol = 1e-10,
                KernelMethod method = KernelMethod::kAnalytic);

  double eta() const { return eta_; }
  double delta() const { return noise_.delta(); }
  double quad_tol() const { return quad_tol_; }
  KernelMethod method() const { return method_; }
  const HonestNoiseModel& noise() const { return noise_; }

  double z_min() const { return (eta_ - 1.0) * noise_.delta(); }
  double z_max() const { return (eta_ + 1.0) * noise_.delta(); }

  // All of these throw DomainError outside their domain.
  double k_eta(double z) const;
  double nu_eta(double z) const;
  double k_inv(double q) const;
  double h_eta(double q) const;

  // nu(z) / (4 k(z)): MSE conditioned on acceptance when every adversarial
  // node reports u + z. Throws UndefinedConditionalError when k(z) = 0.
  double conditional_mse_atom(double z) const;

 private:
  double checked_z(double z) const;
  double checked_q(double q) const;

  HonestNoiseModel noise_;
  double eta_;
  double quad_tol_;
  KernelMethod method_;
};

// Integral of (x + z)^2 (c0 + c1 x) over [lo, hi].
double linear_density_moment(double lo, double hi, double c0, double c1,
                             double z);

}  // namespace goc

#endif  // GOC_KERNEL_H_
