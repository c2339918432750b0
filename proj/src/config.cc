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

#include "goc/config.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <set>
#include <sstream>

#include "goc/errors.h"
#include "goc/numerics.h"

namespace goc {
namespace {

using nlohmann::json;

std::string child(const std::string& ptr, const std::string& key) {
  std::string escaped;
  for (char ch : key) {
    if (ch == '~') {
      escaped += "~0";
    } else if (ch == '/') {
      escaped += "~1";
    } else {
      escaped += ch;
    }
  }
  return ptr + "/" + escaped;
}

// An object node that remembers which keys were read so leftovers can be
// reported as unknown.
class Node {
 public:
  Node(const json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
    if (!j_.is_object()) throw ConfigError(ptr_, "expected an object");
  }

  const std::string& ptr() const { return ptr_; }
  std::string at(const std::string& key) const { return child(ptr_, key); }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback,
                const std::function<bool(double)>& ok, const char* rule) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x) || !ok(x)) throw ConfigError(at(key), rule);
    return x;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback,
                       std::int64_t min, const char* rule) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
    const std::int64_t x = v->get<std::int64_t>();
    if (x < min) throw ConfigError(at(key), rule);
    return x;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback,
                                 std::uint64_t min, const char* rule) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_unsigned()) {
      throw ConfigError(at(key), "expected a nonnegative integer");
    }
    const std::uint64_t x = v->get<std::uint64_t>();
    if (x < min) throw ConfigError(at(key), rule);
    return x;
  }

  std::string string(const std::string& key) {
    const json* v = find(key);
    if (!v) return {};
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    return v->get<std::string>();
  }

  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError(at(it.key()), "unknown key '" + it.key() + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string ptr_;
  std::set<std::string> seen_;
};

constexpr const char* kRequiredKeys =
    "required keys: honest_noise.kind, utility.adversary.family, "
    "utility.dc.family";

GridSpec parse_grid(const json& j, const std::string& ptr) {
  if (j.is_string()) return parse_grid_string(j.get<std::string>(), ptr);
  GridSpec g;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) {
        throw ConfigError(child(ptr, std::to_string(i)), "expected a number");
      }
      g.values.push_back(j[i].get<double>());
    }
    if (g.values.empty()) throw ConfigError(ptr, "grid is empty");
    return g;
  }
  Node n(j, ptr);
  if (const json* v = n.find("values")) {
    n.reject_unknown();
    return parse_grid(*v, n.at("values"));
  }
  auto any = [](double) { return true; };
  g.start = n.number("start", NAN, any, "");
  g.stop = n.number("stop", NAN, any, "");
  g.step = n.number("step", NAN, [](double x) { return x > 0.0; },
                    "step must be positive");
  if (std::isnan(g.start) || std::isnan(g.stop) || std::isnan(g.step)) {
    throw ConfigError(ptr, "grid needs start, stop and step, or values");
  }
  if (g.stop < g.start) throw ConfigError(ptr, "grid stop is below start");
  n.reject_unknown();
  return g;
}

void check_grid(const GridSpec& g, const std::string& ptr,
                const std::function<bool(double)>& ok, const char* rule) {
  std::vector<double> values;
  try {
    values = g.expand();
  } catch (const DomainError& e) {
    throw ConfigError(ptr, e.what());
  }
  if (values.empty()) throw ConfigError(ptr, "grid is empty");
  for (double v : values) {
    if (!std::isfinite(v) || !ok(v)) throw ConfigError(ptr, rule);
  }
}

NoiseSpec parse_noise(const json& j, const std::string& ptr,
                      const std::string& base_dir) {
  Node n(j, ptr);
  NoiseSpec s;
  const json* kind = n.find("kind");
  if (!kind) {
    throw ConfigError(n.at("kind"), std::string("missing key 'kind'; ") +
                                        kRequiredKeys);
  }
  if (!kind->is_string()) throw ConfigError(n.at("kind"), "expected a string");
  try {
    s.kind = parse_noise_kind(kind->get<std::string>());
  } catch (const DomainError& e) {
    throw ConfigError(n.at("kind"), e.what());
  }
  s.delta = n.number("delta", 1.0, [](double x) { return x > 0.0; },
                     "delta must be positive");
  if (const json* p = n.find("params")) {
    Node params(*p, n.at("params"));
    s.sigma = params.number("sigma", 0.0, [](double x) { return x > 0.0; },
                            "sigma must be positive");
    s.csv = params.string("csv");
    params.reject_unknown();
  }
  n.reject_unknown();
  if (s.kind == NoiseKind::kTruncatedNormal && !(s.sigma > 0.0)) {
    throw ConfigError(child(n.at("params"), "sigma"),
                      "truncated_normal noise needs params.sigma");
  }
  if (s.kind == NoiseKind::kTabulated) {
    if (s.csv.empty()) {
      throw ConfigError(child(n.at("params"), "csv"),
                        "tabulated noise needs params.csv");
    }
    std::filesystem::path path(s.csv);
    if (path.is_relative() && !base_dir.empty()) {
      s.csv = (std::filesystem::path(base_dir) / path).lexically_normal().string();
    }
  }
  try {
    s.build();
  } catch (const std::exception& e) {
    throw ConfigError(ptr, e.what());
  }
  return s;
}

void parse_utility(const json* j, RunConfig& cfg) {
  if (!j) throw ConfigError("/utility", std::string("missing key 'utility'; ") + kRequiredKeys);
  Node n(*j, "/utility");
  const json* adv = n.find("adversary");
  const json* dc = n.find("dc");
  if (!adv || !dc) {
    throw ConfigError(n.at(adv ? "dc" : "adversary"),
                      std::string("missing utility family; ") + kRequiredKeys);
  }
  auto positive = [](double x) { return x > 0.0; };
  {
    Node a(*adv, n.at("adversary"));
    const std::string family = a.string("family");
    if (family.empty()) {
      throw ConfigError(a.at("family"), std::string("missing key 'family'; ") +
                                            kRequiredKeys);
    }
    try {
      cfg.adversary.family = parse_adversary_family(family);
    } catch (const DomainError& e) {
      throw ConfigError(a.at("family"), e.what());
    }
    cfg.adversary.a = a.number("a", 1.0, positive, "a must be positive");
    cfg.adversary.b = a.number("b", 1.0, positive, "b must be positive");
    cfg.adversary.c = a.number("c", 1.0, positive, "c must be positive");
    a.reject_unknown();
  }
  {
    Node d(*dc, n.at("dc"));
    const std::string family = d.string("family");
    if (family.empty()) {
      throw ConfigError(d.at("family"), std::string("missing key 'family'; ") +
                                            kRequiredKeys);
    }
    try {
      cfg.dc.family = parse_dc_family(family);
    } catch (const DomainError& e) {
      throw ConfigError(d.at("family"), e.what());
    }
    cfg.dc.gamma = d.number("gamma", 1.0, positive, "gamma must be positive");
    cfg.dc.s = d.number("s", 1.0, positive, "s must be positive");
    d.reject_unknown();
  }
  n.reject_unknown();
  try {
    UtilitySpec check(cfg.adversary, cfg.dc);
  } catch (const DomainError& e) {
    throw ConfigError("/utility", e.what());
  }
}

const char* kEtaRule =
    "eta must be >= 2: a threshold below 2*delta rejects two honest reports";

}  // namespace

std::vector<double> GridSpec::expand() const {
  if (!values.empty()) return values;
  return numerics::step_grid(start, stop, step);
}

nlohmann::json GridSpec::to_json() const {
  if (!values.empty()) return {{"values", values}};
  return {{"start", start}, {"stop", stop}, {"step", step}};
}

GridSpec parse_grid_string(const std::string& text, const std::string& pointer) {
  GridSpec g;
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw ConfigError(pointer, "cannot parse grid '" + text + "'");
    }
    return v;
  };
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);
  if (sep == ':') {
    if (parts.size() != 3) {
      throw ConfigError(pointer, "grid '" + text + "' is not start:stop:step");
    }
    g.start = to_double(parts[0]);
    g.stop = to_double(parts[1]);
    g.step = to_double(parts[2]);
    if (!(g.step > 0.0) || g.stop < g.start) {
      throw ConfigError(pointer, "grid '" + text + "' needs start <= stop and step > 0");
    }
    return g;
  }
  for (const auto& p : parts) g.values.push_back(to_double(p));
  if (g.values.empty()) throw ConfigError(pointer, "grid is empty");
  return g;
}

HonestNoiseModel NoiseSpec::build() const {
  switch (kind) {
    case NoiseKind::kUniform:
      return HonestNoiseModel::uniform(delta);
    case NoiseKind::kTruncatedNormal:
      return HonestNoiseModel::truncated_normal(delta, sigma);
    case NoiseKind::kTriangular:
      return HonestNoiseModel::triangular(delta);
    case NoiseKind::kTabulated:
      return HonestNoiseModel::tabulated_from_csv(delta, csv);
  }
  throw DomainError("unknown noise kind");
}

RunConfig parse_config(const nlohmann::json& doc, const std::string& base_dir) {
  Node root(doc, "");
  RunConfig cfg;

  const json* noise = root.find("honest_noise");
  if (!noise) {
    throw ConfigError("/honest_noise",
                      std::string("missing key 'honest_noise'; ") + kRequiredKeys);
  }
  cfg.honest_noise = parse_noise(*noise, "/honest_noise", base_dir);
  parse_utility(root.find("utility"), cfg);

  if (const json* d = root.find("data")) {
    Node n(*d, "/data");
    cfg.data.m = n.number("m", 1000.0, [](double x) { return x > 0.0; },
                          "m must be positive");
    n.reject_unknown();
  }
  try {
    cfg.data.validate(cfg.honest_noise.delta);
  } catch (const DomainError& e) {
    throw ConfigError("/data/m", e.what());
  }

  cfg.eta = root.number("eta", 2.0, [](double x) { return x >= 2.0; }, kEtaRule);
  auto eta_ok = [](double x) { return x >= 2.0; };
  auto alpha_ok = [](double x) { return x > 0.0 && x <= 1.0; };
  if (const json* g = root.find("eta_grid")) cfg.eta_grid = parse_grid(*g, "/eta_grid");
  check_grid(cfg.eta_grid, "/eta_grid", eta_ok, kEtaRule);
  if (const json* g = root.find("alpha_grid")) {
    cfg.alpha_grid = parse_grid(*g, "/alpha_grid");
  }
  check_grid(cfg.alpha_grid, "/alpha_grid", alpha_ok,
             "alpha values must lie in (0, 1]");

  if (const json* e = root.find("envelope")) {
    Node n(*e, "/envelope");
    cfg.envelope.grid_size = static_cast<int>(
        n.integer("grid_size", 4096, 33, "grid_size must be at least 33"));
    cfg.envelope.touch_tolerance =
        n.number("touch_tolerance", 1e-8, [](double x) { return x > 0.0; },
                 "touch_tolerance must be positive");
    cfg.envelope.refine_samples = static_cast<int>(
        n.integer("refine_samples", 64, 0, "refine_samples must be nonnegative"));
    n.reject_unknown();
  }

  if (const json* t = root.find("tradeoff")) {
    Node n(*t, "/tradeoff");
    if (const json* a = n.find("alphas")) {
      cfg.tradeoff_alphas = parse_grid(*a, n.at("alphas"));
    }
    cfg.oracle_grid = static_cast<int>(
        n.integer("oracle_grid", 2048, 64, "oracle_grid must be at least 64"));
    n.reject_unknown();
  }
  check_grid(cfg.tradeoff_alphas, "/tradeoff/alphas", alpha_ok,
             "alpha values must lie in (0, 1]");

  if (const json* s = root.find("simulation")) {
    Node n(*s, "/simulation");
    if (const json* nodes = n.find("n_nodes")) {
      const std::string ptr = n.at("n_nodes");
      if (!nodes->is_array() || nodes->empty()) {
        throw ConfigError(ptr, "expected a nonempty array of integers >= 2");
      }
      cfg.simulation.n_nodes.clear();
      for (std::size_t i = 0; i < nodes->size(); ++i) {
        const json& v = (*nodes)[i];
        if (!v.is_number_integer() || v.get<std::int64_t>() < 2 ||
            v.get<std::int64_t>() > 1000000) {
          throw ConfigError(child(ptr, std::to_string(i)),
                            "n_nodes entries must be integers >= 2");
        }
        cfg.simulation.n_nodes.push_back(v.get<int>());
      }
    }
    cfg.simulation.trials =
        n.unsigned_integer("trials", 1000000, 1, "trials must be at least 1");
    cfg.simulation.seed = n.unsigned_integer("seed", 20260101, 0, "");
    cfg.simulation.alpha =
        n.number("alpha", 0.5, alpha_ok, "alpha must lie in (0, 1]");
    cfg.simulation.workers = static_cast<unsigned>(
        n.unsigned_integer("workers", 0, 0, ""));
    cfg.simulation.chunk_size = n.unsigned_integer(
        "chunk_size", 65536, 1, "chunk_size must be at least 1");
    n.reject_unknown();
  }

  if (const json* v = root.find("verify")) {
    Node n(*v, "/verify");
    cfg.verify.realizations = n.unsigned_integer(
        "realizations", 100000, 1, "realizations must be at least 1");
    cfg.verify.candidates = static_cast<int>(
        n.integer("candidates", 100, 0, "candidates must be nonnegative"));
    cfg.verify.iid_candidates = static_cast<int>(
        n.integer("iid_candidates", 10, 0, "iid_candidates must be nonnegative"));
    cfg.verify.trials =
        n.unsigned_integer("trials", 100000, 1, "trials must be at least 1");
    cfg.verify.n_nodes = static_cast<int>(
        n.integer("n_nodes", 3, 3, "verify.n_nodes must be at least 3"));
    n.reject_unknown();
  }

  if (const json* o = root.find("output_dir")) {
    if (!o->is_string()) throw ConfigError("/output_dir", "expected a string");
    cfg.output_dir = o->get<std::string>();
  }
  root.reject_unknown();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_config(doc, dir);
}

nlohmann::json default_config_json() {
  return {
      {"honest_noise", {{"kind", "uniform"}, {"delta", 1.0}}},
      {"eta", 2.0},
      {"utility",
       {{"adversary", {{"family", "scaled_product"}, {"c", 1.0}}},
        {"dc", {{"family", "linear_penalty"}, {"gamma", 1.0}}}}},
  };
}

nlohmann::json resolved_json(const RunConfig& cfg) {
  json noise = {{"kind", std::string(to_string(cfg.honest_noise.kind))},
                {"delta", cfg.honest_noise.delta}};
  if (cfg.honest_noise.kind == NoiseKind::kTruncatedNormal) {
    noise["params"] = {{"sigma", cfg.honest_noise.sigma}};
  } else if (cfg.honest_noise.kind == NoiseKind::kTabulated) {
    noise["params"] = {{"csv", cfg.honest_noise.csv}};
  }
  json adversary = {{"family", std::string(to_string(cfg.adversary.family))}};
  if (cfg.adversary.family == AdversaryFamily::kWeightedSum) {
    adversary["a"] = cfg.adversary.a;
    adversary["b"] = cfg.adversary.b;
  } else {
    adversary["c"] = cfg.adversary.c;
  }
  json dc = {{"family", std::string(to_string(cfg.dc.family))}};
  if (cfg.dc.family == DcFamily::kLinearPenalty) {
    dc["gamma"] = cfg.dc.gamma;
  } else {
    dc["s"] = cfg.dc.s;
  }
  return {
      {"honest_noise", noise},
      {"data", {{"m", cfg.data.m}}},
      {"eta", cfg.eta},
      {"eta_grid", cfg.eta_grid.to_json()},
      {"alpha_grid", cfg.alpha_grid.to_json()},
      {"utility", {{"adversary", adversary}, {"dc", dc}}},
      {"envelope",
       {{"grid_size", cfg.envelope.grid_size},
        {"touch_tolerance", cfg.envelope.touch_tolerance},
        {"refine_samples", cfg.envelope.refine_samples}}},
      {"tradeoff",
       {{"alphas", cfg.tradeoff_alphas.to_json()},
        {"oracle_grid", cfg.oracle_grid}}},
      {"simulation",
       {{"n_nodes", cfg.simulation.n_nodes},
        {"trials", cfg.simulation.trials},
        {"seed", cfg.simulation.seed},
        {"alpha", cfg.simulation.alpha},
        {"workers", cfg.simulation.workers},
        {"chunk_size", cfg.simulation.chunk_size}}},
      {"verify",
       {{"realizations", cfg.verify.realizations},
        {"candidates", cfg.verify.candidates},
        {"iid_candidates", cfg.verify.iid_candidates},
        {"trials", cfg.verify.trials},
        {"n_nodes", cfg.verify.n_nodes}}},
  };
}

std::string config_hash(const nlohmann::json& resolved) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : resolved.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace goc
