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

#include "goc/simulator.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <string>
#include <thread>

#include "goc/errors.h"

namespace goc {
namespace {

struct ChunkStats {
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  double sum_e2 = 0.0;
  double sum_e4 = 0.0;
};

ChunkStats run_chunk(const GameConfig& cfg, const AdversaryStrategy& adv,
                     std::uint64_t chunk, std::uint64_t count) {
  CounterRng rng(cfg.seed, chunk);
  const double delta = cfg.noise.delta();
  const auto n = static_cast<std::size_t>(cfg.n_nodes);
  std::vector<double> noise(n);
  std::vector<double> y(n);
  const bool pass_u = adv.u_dependent();
  ChunkStats stats;
  stats.trials = count;
  for (std::uint64_t t = 0; t < count; ++t) {
    const double u = cfg.data.draw(rng);
    noise[0] = cfg.noise.draw(rng);
    adv.draw(rng, pass_u ? std::optional<double>(u) : std::nullopt,
             std::span<double>(noise).subspan(1));
    for (std::size_t i = 0; i < n; ++i) y[i] = u + noise[i];
    if (!accept(y, cfg.eta, delta)) continue;
    const double err = estimate(y) - u;
    if (cfg.debug_checks) {
      const auto [lo, hi] = std::minmax_element(noise.begin(), noise.end());
      const double expected = 0.5 * (*lo + *hi);
      const double scale = std::abs(u) + std::max(std::abs(*lo), std::abs(*hi));
      if (std::abs(err - expected) >
          8.0 * std::numeric_limits<double>::epsilon() * scale) {
        throw NumericalError("error decomposition violated in a trial");
      }
    }
    ++stats.accepted;
    const double e2 = err * err;
    stats.sum_e2 += e2;
    stats.sum_e4 += e2 * e2;
  }
  return stats;
}

double utility_stderr(const UtilitySpec& spec, const SimulationResult& r) {
  const auto g = spec.adversary_gradient(*r.mse_hat, r.pa_hat);
  const double vm = *r.mse_stderr * *r.mse_stderr;
  const double vp = r.pa_stderr * r.pa_stderr;
  return std::sqrt(g[0] * g[0] * vm + g[1] * g[1] * vp);
}

double max_pairwise_spread(std::span<const double> xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi - *lo;
}

}  // namespace

void GameConfig::validate() const {
  if (n_nodes < 2) throw DomainError("n_nodes must be at least 2");
  if (!(eta >= 2.0) || !std::isfinite(eta)) {
    throw DomainError("eta must be finite and at least 2");
  }
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (chunk_size < 1) throw DomainError("chunk_size must be at least 1");
  data.validate(noise.delta());
}

bool accept(std::span<const double> y, double eta, double delta) {
  return max_pairwise_spread(y) <= eta * delta;
}

double estimate(std::span<const double> y) {
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  return 0.5 * (*lo + *hi);
}

SimulationResult run_monte_carlo(const GameConfig& cfg,
                                 const AdversaryStrategy& adv) {
  cfg.validate();
  if (adv.arity() != cfg.n_nodes - 1) {
    throw DomainError("strategy arity " + std::to_string(adv.arity()) +
                      " does not match N - 1 = " +
                      std::to_string(cfg.n_nodes - 1));
  }
  const std::uint64_t chunks = (cfg.trials + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<ChunkStats> stats(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t begin = c * cfg.chunk_size;
      const std::uint64_t count = std::min(cfg.chunk_size, cfg.trials - begin);
      try {
        stats[c] = run_chunk(cfg, adv, c, count);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  unsigned workers = cfg.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ChunkStats total;
  for (const ChunkStats& s : stats) {
    total.trials += s.trials;
    total.accepted += s.accepted;
    total.sum_e2 += s.sum_e2;
    total.sum_e4 += s.sum_e4;
  }
  SimulationResult r;
  r.trials = total.trials;
  r.accepted_count = total.accepted;
  r.pa_hat = static_cast<double>(total.accepted) / static_cast<double>(total.trials);
  r.pa_stderr =
      std::sqrt(r.pa_hat * (1.0 - r.pa_hat) / static_cast<double>(total.trials));
  if (total.accepted > 0) {
    const double k = static_cast<double>(total.accepted);
    const double mean = total.sum_e2 / k;
    r.mse_hat = mean;
    double var = 0.0;
    if (total.accepted > 1) {
      var = std::max(0.0, (total.sum_e4 / k - mean * mean) * k / (k - 1.0));
    }
    r.mse_stderr = std::sqrt(var / k);
  }
  return r;
}

ScenarioReduction scenario_reduce(double honest_noise,
                                  std::span<const double> adv_noises) {
  if (adv_noises.empty()) throw DomainError("no adversarial noises");
  ScenarioReduction out;
  for (std::size_t i = 1; i < adv_noises.size(); ++i) {
    if (std::abs(adv_noises[i]) > std::abs(adv_noises[out.abs_index])) {
      out.abs_index = i;
    }
  }
  out.n_abs = adv_noises[out.abs_index];
  out.scenario2.assign(adv_noises.size(), out.n_abs);
  out.scenario3 = {honest_noise, out.n_abs};
  return out;
}

ScenarioCheck check_scenario_equivalence(double honest_noise,
                                         std::span<const double> adv_noises,
                                         double eta, double delta) {
  ScenarioCheck check;
  if (max_pairwise_spread(adv_noises) > eta * delta) {
    check.skipped = true;
    return check;
  }
  const ScenarioReduction red = scenario_reduce(honest_noise, adv_noises);

  std::vector<double> s1{honest_noise};
  s1.insert(s1.end(), adv_noises.begin(), adv_noises.end());
  std::vector<double> s2{honest_noise};
  s2.insert(s2.end(), red.scenario2.begin(), red.scenario2.end());
  const std::array<double, 2> s3{red.scenario3.first, red.scenario3.second};

  const bool a1 = accept(s1, eta, delta);
  const bool a2 = accept(s2, eta, delta);
  const bool a3 = accept(s3, eta, delta);
  check.accepted = a1;
  check.accept_equivalent = a1 == a2;
  if (a1) {
    check.ordering_holds = std::abs(2.0 * estimate(s1)) <= std::abs(2.0 * estimate(s2));
  }
  check.reduction_identical = a2 == a3 && estimate(s2) == estimate(s3);
  return check;
}

ScenarioSuiteResult run_scenario_suite(const HonestNoiseModel& noise, double eta,
                                       int max_adversaries,
                                       std::uint64_t realizations,
                                       std::uint64_t seed) {
  if (max_adversaries < 1) throw DomainError("need at least one adversary");
  CounterRng rng(seed, 0);
  const double delta = noise.delta();
  const double reach = (eta + 1.0) * delta;
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * rng.uniform01();
  };
  auto lattice = [&](double half_width) {
    const long steps = std::lround(4.0 * half_width / delta);
    const long i = static_cast<long>(rng.uniform01() * (2 * steps + 1)) - steps;
    return static_cast<double>(i) * delta / 4.0;
  };

  ScenarioSuiteResult out;
  std::vector<double> adv;
  const std::uint64_t max_attempts = 20 * realizations + 1000;
  for (std::uint64_t attempt = 0;
       out.checked < realizations && attempt < max_attempts; ++attempt) {
    const int count = 1 + static_cast<int>(rng.uniform01() * max_adversaries);
    adv.assign(static_cast<std::size_t>(count), 0.0);
    double honest = noise.draw(rng);
    switch (attempt % 4) {
      case 0: {
        const double centre = uniform(-reach, reach);
        for (double& x : adv) x = centre + uniform(-0.5, 0.5) * eta * delta;
        break;
      }
      case 1:
        for (double& x : adv) x = uniform(-reach, reach);
        break;
      case 2:
        honest = lattice(delta);
        for (double& x : adv) x = lattice(reach);
        break;
      default: {
        const double x0 = uniform(0.0, 0.5 * eta * delta);
        for (std::size_t i = 0; i < adv.size(); ++i) {
          adv[i] = (i % 2 == 0 ? x0 : -x0);
        }
        break;
      }
    }
    const ScenarioCheck c = check_scenario_equivalence(honest, adv, eta, delta);
    if (c.skipped) {
      ++out.skipped;
      continue;
    }
    ++out.checked;
    if (c.accepted) ++out.accepted;
    if (!c.accept_equivalent) ++out.accept_failures;
    if (!c.ordering_holds) ++out.ordering_failures;
    if (!c.reduction_identical) ++out.reduction_failures;
  }
  return out;
}

AtomDistribution random_atomic_distribution(CounterRng& rng, double eta,
                                            double delta, int max_atoms) {
  if (max_atoms < 1) throw DomainError("max_atoms must be at least 1");
  const int count = 1 + static_cast<int>(rng.uniform01() * max_atoms);
  const double reach = (eta + 1.0) * delta;
  std::vector<Atom> atoms(static_cast<std::size_t>(count));
  double total = 0.0;
  for (Atom& a : atoms) {
    a.location = reach * (2.0 * rng.uniform01() - 1.0);
    a.weight = -std::log1p(-rng.uniform01()) + 1e-9;
    total += a.weight;
  }
  for (Atom& a : atoms) a.weight /= total;
  // Absorb the rounding residue so the weights sum to one.
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) rest -= atoms[i].weight;
  atoms.back().weight = rest;
  return AtomDistribution(std::move(atoms));
}

AdversaryStrategy condition_noncancelling(const AdversaryStrategy& adv,
                                          double eta, double delta,
                                          CounterRng& rng) {
  if (adv.as_replicated()) return adv;
  if (adv.u_dependent()) {
    throw DomainError("cannot condition a u-dependent strategy");
  }
  const double limit = eta * delta;
  std::vector<double> buf(static_cast<std::size_t>(adv.arity()));
  int hits = 0;
  for (int i = 0; i < kPilotDraws; ++i) {
    adv.draw(rng, std::nullopt, buf);
    if (max_pairwise_spread(buf) <= limit) ++hits;
  }
  const double mass = static_cast<double>(hits) / kPilotDraws;
  if (mass < kMinConditioningMass) {
    throw ConditioningError("pilot estimate of the non-cancelling event is " +
                            std::to_string(mass) + " (< 1e-4); refusing");
  }
  auto base = std::make_shared<const AdversaryStrategy>(adv);
  auto sampler = [base, limit](CounterRng& r, std::optional<double>,
                               std::span<double> out) {
    do {
      base->draw(r, std::nullopt, out);
    } while (max_pairwise_spread(out) > limit);
  };
  return AdversaryStrategy(CustomJoint{sampler, false, adv.label() + "|D"},
                           adv.arity());
}

DominanceReport dominance_check(const GameConfig& cfg, const UtilitySpec& spec,
                                std::span<const AdversaryStrategy> candidates,
                                const AdversaryStrategy& optimum) {
  DominanceReport report;
  report.optimum = run_monte_carlo(cfg, optimum);
  if (!report.optimum.mse_hat) {
    throw NumericalError("optimum strategy was never accepted");
  }
  report.optimum_utility =
      spec.adversary(*report.optimum.mse_hat, report.optimum.pa_hat);
  report.optimum_stderr = utility_stderr(spec, report.optimum);

  for (const AdversaryStrategy& cand : candidates) {
    DominanceEntry entry;
    entry.label = cand.label();
    entry.result = run_monte_carlo(cfg, cand);
    if (!entry.result.mse_hat) {
      entry.no_acceptance = true;
      ++report.flagged;
    } else {
      entry.utility = spec.adversary(*entry.result.mse_hat, entry.result.pa_hat);
      entry.utility_stderr = utility_stderr(spec, entry.result);
      const double bound =
          report.optimum_utility +
          4.0 * std::hypot(entry.utility_stderr, report.optimum_stderr);
      entry.violation = entry.utility > bound;
      if (entry.violation) ++report.violations;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace goc
