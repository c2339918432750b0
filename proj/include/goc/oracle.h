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

#ifndef GOC_ORACLE_H_
#define GOC_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "goc/noise_model.h"

namespace goc {

// Brute-force counterpart of the trade-off curve for the two-node game. It
// shares nothing with the kernel/envelope path beyond the noise CDF: the
// error kernel is integrated numerically for every |z|, with no domain
// restriction on z.
class TradeoffOracle {
 public:
  struct Atom {
    double z = 0.0;
    double weight = 0.0;
  };
  struct Result {
    double value = 0.0;
    // One or two atoms attaining `value`, z >= 0.
    std::vector<Atom> atoms;
  };
  struct Outcome {
    double pa = 0.0;
    double mse = 0.0;  // NaN when pa == 0
  };

  // z grid: grid_size uniform points on [0, (eta+1) delta] plus the point
  // (eta-1) delta. With include_inner = false only z >= (eta-1) delta is
  // kept. Requires grid_size >= 64.
  TradeoffOracle(HonestNoiseModel noise, double eta, int grid_size = 2048,
                 bool include_inner = true);

  // PA of a single atom at z: P(|n_h - z| <= eta delta).
  double k(double z) const;
  // E[(n_h + z)^2 ; |n_h - z| <= eta delta].
  double nu(double z) const;

  // max over distributions on the grid of E[nu] / (4 E[k]) subject to
  // E[k] >= alpha, by exhaustive search over single atoms and atom pairs.
  // Requires 0 < alpha <= 1.
  Result max_mse(double alpha) const;

  // Random-restart local search over three-atom distributions; returns the
  // best feasible value found. Used to spot-check the two-atom reduction.
  double three_atom_search(double alpha, std::uint64_t seed, int restarts,
                           int steps) const;

  // Exact PA and conditional MSE of an arbitrary atomic adversary in the
  // two-node game (atoms may have any sign and location).
  Outcome evaluate(std::span<const Atom> atoms) const;

  const std::vector<double>& z_grid() const { return zs_; }
  const std::vector<double>& k_grid() const { return ks_; }
  const std::vector<double>& nu_grid() const { return nus_; }

 private:
  HonestNoiseModel noise_;
  double eta_;
  std::vector<double> zs_;
  std::vector<double> ks_;
  std::vector<double> nus_;
};

// Shorthand for TradeoffOracle(noise, eta, grid_size).max_mse(alpha).value.
double oracle_c2(const HonestNoiseModel& noise, double eta, double alpha,
                 int grid_size = 2048);

}  // namespace goc

#endif  // GOC_ORACLE_H_
