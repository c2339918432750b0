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

#ifndef GOC_SIMULATOR_H_
#define GOC_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goc/joint_strategy.h"
#include "goc/noise_model.h"
#include "goc/strategy.h"

namespace goc {

struct GameConfig {
  int n_nodes = 2;
  double eta = 2.0;
  DataModel data;
  HonestNoiseModel noise = HonestNoiseModel::uniform(1.0);
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  // 0 uses the hardware concurrency. Results do not depend on it.
  unsigned workers = 0;
  std::uint64_t chunk_size = 65536;
  // Checks the error decomposition on every accepted trial.
  bool debug_checks = false;

  // Throws DomainError.
  void validate() const;
};

// max(y) - min(y) <= eta * delta.
bool accept(std::span<const double> y, double eta, double delta);
// (max(y) + min(y)) / 2.
double estimate(std::span<const double> y);

struct SimulationResult {
  double pa_hat = 0.0;
  double pa_stderr = 0.0;
  // Absent when no trial was accepted.
  std::optional<double> mse_hat;
  std::optional<double> mse_stderr;
  std::uint64_t accepted_count = 0;
  std::uint64_t trials = 0;
};

// Plays cfg.trials rounds: u from the data model, one honest noise, and
// N-1 adversarial noises from `adv` (arity must be N-1). Trials are split
// into chunks of cfg.chunk_size, each with its own random substream, and
// merged in chunk order, so the result depends only on (cfg, adv).
SimulationResult run_monte_carlo(const GameConfig& cfg,
                                 const AdversaryStrategy& adv);

struct ScenarioReduction {
  // Index and value of the first adversarial noise of largest magnitude.
  std::size_t abs_index = 0;
  double n_abs = 0.0;
  // Every adversarial noise replaced by n_abs.
  std::vector<double> scenario2;
  // Two-node game (honest, n_abs).
  std::pair<double, double> scenario3;
};

// Requires a nonempty adv_noises.
ScenarioReduction scenario_reduce(double honest_noise,
                                  std::span<const double> adv_noises);

struct ScenarioCheck {
  // Adversarial spread exceeded eta * delta; nothing was checked.
  bool skipped = false;
  bool accepted = false;
  bool accept_equivalent = true;
  bool ordering_holds = true;
  bool reduction_identical = true;

  bool ok() const {
    return skipped || (accept_equivalent && ordering_holds && reduction_identical);
  }
};

// Exact (noise-space) check of the scenario 1 -> 2 -> 3 reductions for one
// realization.
ScenarioCheck check_scenario_equivalence(double honest_noise,
                                         std::span<const double> adv_noises,
                                         double eta, double delta);

struct ScenarioSuiteResult {
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t accepted = 0;
  std::uint64_t accept_failures = 0;
  std::uint64_t ordering_failures = 0;
  std::uint64_t reduction_failures = 0;

  bool ok() const {
    return accept_failures == 0 && ordering_failures == 0 &&
           reduction_failures == 0;
  }
};

// Runs check_scenario_equivalence until `realizations` draws meeting the
// spread precondition have been checked. Draws mix clustered adversaries,
// unconstrained ones (some get skipped), lattice values that create ties
// and boundary spreads, and sign-mirrored pairs; 1 to max_adversaries
// adversarial noises each.
ScenarioSuiteResult run_scenario_suite(const HonestNoiseModel& noise, double eta,
                                       int max_adversaries,
                                       std::uint64_t realizations,
                                       std::uint64_t seed);

// Random finitely supported noise: 1 to max_atoms atoms, locations uniform on
// [-(eta+1) delta, (eta+1) delta], exponential weights normalized to one.
AtomDistribution random_atomic_distribution(CounterRng& rng, double eta,
                                            double delta, int max_atoms = 4);

inline constexpr int kPilotDraws = 10000;
inline constexpr double kMinConditioningMass = 1e-4;

// Conditions `adv` on every pairwise adversarial spread being <= eta*delta
// by rejection sampling. Replicated strategies are returned unchanged.
// Throws ConditioningError when a pilot of 10^4 draws puts the event's
// probability below 1e-4, and DomainError for u-dependent strategies.
AdversaryStrategy condition_noncancelling(const AdversaryStrategy& adv,
                                          double eta, double delta,
                                          CounterRng& rng);

struct DominanceEntry {
  std::string label;
  SimulationResult result;
  double utility = 0.0;
  double utility_stderr = 0.0;
  bool no_acceptance = false;
  bool violation = false;
};

struct DominanceReport {
  SimulationResult optimum;
  double optimum_utility = 0.0;
  double optimum_stderr = 0.0;
  std::vector<DominanceEntry> entries;
  std::size_t violations = 0;
  std::size_t flagged = 0;
};

// Empirical Q_AD of every candidate against the optimum, all run with the
// same cfg (and therefore the same seed). A candidate violates dominance if
// its utility exceeds the optimum's by more than 4 combined standard errors
// (delta method). Candidates with no accepted trial are flagged, not judged.
DominanceReport dominance_check(const GameConfig& cfg, const UtilitySpec& spec,
                                std::span<const AdversaryStrategy> candidates,
                                const AdversaryStrategy& optimum);

}  // namespace goc

#endif  // GOC_SIMULATOR_H_
