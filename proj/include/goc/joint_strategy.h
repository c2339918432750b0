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

#ifndef GOC_JOINT_STRATEGY_H_
#define GOC_JOINT_STRATEGY_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "goc/rng.h"

namespace goc {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

// Finitely supported distribution of a single adversarial noise.
class AtomDistribution {
 public:
  // Weights must be positive and sum to one within 1e-12.
  explicit AtomDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double draw(CounterRng& rng) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

// Fills `out` with the N-1 adversarial noises of one trial. `u` is set only
// for strategies flagged u_dependent.
using JointSampler = std::function<void(CounterRng& rng, std::optional<double> u,
                                        std::span<double> out)>;

// One shared draw from `dist` reported by every adversarial node.
struct Replicated {
  AtomDistribution dist;
};

struct CustomJoint {
  JointSampler sampler;
  bool u_dependent = false;
  std::string label;
};

// Joint law of the N-1 adversarial noises. Immutable and shareable between
// threads as long as the sampler is.
class AdversaryStrategy {
 public:
  using Variant = std::variant<Replicated, CustomJoint>;

  AdversaryStrategy(Variant variant, int arity);

  static AdversaryStrategy replicated(AtomDistribution dist, int arity);
  // Independent draws from `dist` for every adversarial node.
  static AdversaryStrategy iid(AtomDistribution dist, int arity);

  int arity() const { return arity_; }
  bool u_dependent() const;
  const Variant& variant() const { return variant_; }
  const Replicated* as_replicated() const {
    return std::get_if<Replicated>(&variant_);
  }
  std::string label() const;

  // out.size() must equal arity().
  void draw(CounterRng& rng, std::optional<double> u,
            std::span<double> out) const;

 private:
  Variant variant_;
  int arity_;
};

}  // namespace goc

#endif  // GOC_JOINT_STRATEGY_H_
