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

#include "goc/joint_strategy.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "goc/errors.h"

namespace goc {

AtomDistribution::AtomDistribution(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("atom list is empty");
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.location)) {
      throw DomainError("atoms need positive weights and finite locations");
    }
    total += a.weight;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("atom weights must sum to one");
  }
}

double AtomDistribution::draw(CounterRng& rng) const {
  const double x = rng.uniform01() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  if (it == cumulative_.end()) --it;
  return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].location;
}

AdversaryStrategy::AdversaryStrategy(Variant variant, int arity)
    : variant_(std::move(variant)), arity_(arity) {
  if (arity_ < 1) throw DomainError("a strategy needs at least one adversary");
  if (auto* c = std::get_if<CustomJoint>(&variant_); c && !c->sampler) {
    throw DomainError("custom strategy without a sampler");
  }
}

AdversaryStrategy AdversaryStrategy::replicated(AtomDistribution dist,
                                                int arity) {
  return AdversaryStrategy(Replicated{std::move(dist)}, arity);
}

AdversaryStrategy AdversaryStrategy::iid(AtomDistribution dist, int arity) {
  auto sampler = [dist = std::move(dist)](CounterRng& rng, std::optional<double>,
                                          std::span<double> out) {
    for (double& x : out) x = dist.draw(rng);
  };
  return AdversaryStrategy(CustomJoint{sampler, false, "iid"}, arity);
}

bool AdversaryStrategy::u_dependent() const {
  const auto* c = std::get_if<CustomJoint>(&variant_);
  return c != nullptr && c->u_dependent;
}

std::string AdversaryStrategy::label() const {
  if (as_replicated()) return "replicated";
  return std::get<CustomJoint>(variant_).label;
}

void AdversaryStrategy::draw(CounterRng& rng, std::optional<double> u,
                             std::span<double> out) const {
  if (const auto* r = as_replicated()) {
    std::fill(out.begin(), out.end(), r->dist.draw(rng));
    return;
  }
  const auto& c = std::get<CustomJoint>(variant_);
  c.sampler(rng, c.u_dependent ? u : std::nullopt, out);
}

}  // namespace goc
