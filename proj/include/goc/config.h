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

#ifndef GOC_CONFIG_H_
#define GOC_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "goc/envelope.h"
#include "goc/noise_model.h"
#include "goc/strategy.h"

namespace goc {

// Either an explicit list or start:stop:step with both ends included.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  std::vector<double> values;

  std::vector<double> expand() const;
  nlohmann::json to_json() const;
};

// "start:stop:step" or a comma-separated list. Throws ConfigError.
GridSpec parse_grid_string(const std::string& text, const std::string& pointer);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kUniform;
  double delta = 1.0;
  double sigma = 0.0;    // truncated_normal
  std::string csv;       // tabulated

  HonestNoiseModel build() const;
};

struct SimulationSpec {
  std::vector<int> n_nodes{2, 3, 5};
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 20260101;
  double alpha = 0.5;
  unsigned workers = 0;
  std::uint64_t chunk_size = 65536;
};

struct VerifySpec {
  std::uint64_t realizations = 100000;
  int candidates = 100;
  int iid_candidates = 10;
  std::uint64_t trials = 100000;
  int n_nodes = 3;
};

struct RunConfig {
  NoiseSpec honest_noise;
  DataModel data;
  double eta = 2.0;
  GridSpec eta_grid{2.0, 8.0, 0.01, {}};
  GridSpec alpha_grid{0.001, 1.0, 0.001, {}};
  AdversaryUtility adversary;
  DcUtility dc;
  EnvelopeOptions envelope;
  GridSpec tradeoff_alphas{0.1, 1.0, 0.1, {}};
  int oracle_grid = 2048;
  SimulationSpec simulation;
  VerifySpec verify;
  // Not part of the resolved config.
  std::optional<std::string> output_dir;
};

// Validates a config document. Errors are ConfigError with a JSON pointer.
// `base_dir` resolves relative CSV paths.
RunConfig parse_config(const nlohmann::json& doc, const std::string& base_dir = "");
RunConfig load_config(const std::string& path);
// The built-in default document: uniform noise with delta 1, eta 2.
nlohmann::json default_config_json();

// Fully resolved config (all defaults filled in, output_dir omitted).
nlohmann::json resolved_json(const RunConfig& cfg);
// FNV-1a 64 of the compact dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& resolved);

}  // namespace goc

#endif  // GOC_CONFIG_H_
