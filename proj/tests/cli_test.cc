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

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "goc/commands.h"
#include "goc/config.h"
#include "goc/errors.h"
#include "json.hpp"
#include "test_util.h"

namespace goc {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json minimal() {
  return json::parse(R"({
    "honest_noise": {"kind": "uniform"},
    "utility": {"adversary": {"family": "scaled_product"},
                "dc": {"family": "linear_penalty"}}
  })");
}

// Small enough for every command to finish in well under a second.
json quick() {
  json doc = minimal();
  doc["eta_grid"] = "2:3:0.5";
  doc["alpha_grid"] = {{"start", 0.01}, {"stop", 1.0}, {"step", 0.01}};
  doc["tradeoff"] = {{"alphas", {0.25, 0.5, 1.0}}, {"oracle_grid", 256}};
  doc["simulation"] = {{"n_nodes", {2, 3}}, {"trials", 5000}, {"workers", 2}};
  doc["verify"] = {{"realizations", 2000}, {"candidates", 3},
                   {"iid_candidates", 2}, {"trials", 5000}};
  return doc;
}

std::string config_error_pointer(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliRun : public ::testing::Test {
 protected:
  CliRun() : dir_("cli") {
    config_ = dir_.path() / "config.json";
    std::ofstream(config_) << quick().dump(2);
  }

  int run(const std::string& cmd, CommandOptions opts = {},
          const std::string& sub = "out") {
    opts.config_path = config_.string();
    if (!opts.out_dir) opts.out_dir = (dir_.path() / sub).string();
    std::ostringstream out;
    err_.str("");
    return dispatch(cmd, opts, out, err_);
  }

  fs::path out(const std::string& file, const std::string& sub = "out") const {
    return dir_.path() / sub / file;
  }

  test_util::TempDir dir_;
  fs::path config_;
  std::ostringstream err_;
};

TEST(Config, MinimalResolvesDefaults) {
  const RunConfig cfg = parse_config(minimal());
  EXPECT_EQ(cfg.eta, 2.0);
  EXPECT_EQ(cfg.honest_noise.delta, 1.0);
  EXPECT_EQ(cfg.eta_grid.expand().size(), 601u);
  EXPECT_EQ(cfg.alpha_grid.expand().size(), 1000u);
  EXPECT_EQ(cfg.simulation.n_nodes, (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(cfg.envelope.grid_size, 4096);
  const json r = resolved_json(cfg);
  EXPECT_EQ(r["utility"]["adversary"]["c"], 1.0);
  EXPECT_EQ(r["data"]["m"], 1000.0);
  EXPECT_FALSE(r.contains("output_dir"));
  // The resolved form parses back to itself.
  EXPECT_EQ(resolved_json(parse_config(r)), r);
}

TEST(Config, DefaultDocumentMatchesMinimal) {
  EXPECT_EQ(resolved_json(parse_config(default_config_json())),
            resolved_json(parse_config(minimal())));
}

TEST(Config, HashIsStableHex) {
  const json r = resolved_json(parse_config(minimal()));
  const std::string h = config_hash(r);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h.find_first_not_of("0123456789abcdef"), std::string::npos);
  EXPECT_EQ(h, config_hash(r));
  json other = minimal();
  other["eta"] = 2.5;
  EXPECT_NE(h, config_hash(resolved_json(parse_config(other))));
}

TEST(Config, EtaBelowTwoRejected) {
  json doc = minimal();
  doc["eta"] = 1.5;
  try {
    parse_config(doc);
    FAIL() << "accepted eta 1.5";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.pointer(), "/eta");
    EXPECT_NE(std::string(e.what()).find("eta must be >= 2"), std::string::npos);
  }
  doc = minimal();
  doc["eta_grid"] = {1.0, 2.0};
  EXPECT_EQ(config_error_pointer(doc), "/eta_grid");
}

TEST(Config, MissingUtilityListsRequiredKeys) {
  json doc = minimal();
  doc.erase("utility");
  try {
    parse_config(doc);
    FAIL() << "accepted a config without utility";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.pointer(), "/utility");
    const std::string msg = e.what();
    EXPECT_NE(msg.find("utility.adversary.family"), std::string::npos);
    EXPECT_NE(msg.find("utility.dc.family"), std::string::npos);
    EXPECT_NE(msg.find("honest_noise.kind"), std::string::npos);
  }
}

TEST(Config, SchemaViolationsCarryPointers) {
  json doc = minimal();
  doc["typo"] = 1;
  EXPECT_EQ(config_error_pointer(doc), "/typo");
  doc = minimal();
  doc["honest_noise"]["kind"] = "cauchy";
  EXPECT_EQ(config_error_pointer(doc), "/honest_noise/kind");
  doc = minimal();
  doc["honest_noise"] = {{"kind", "truncated_normal"}};
  EXPECT_EQ(config_error_pointer(doc), "/honest_noise/params/sigma");
  doc = minimal();
  doc["utility"]["adversary"]["c"] = -1;
  EXPECT_EQ(config_error_pointer(doc), "/utility/adversary/c");
  doc = minimal();
  doc["simulation"] = {{"n_nodes", {2, 1}}};
  EXPECT_EQ(config_error_pointer(doc).rfind("/simulation/n_nodes", 0), 0u);
  doc = minimal();
  doc["alpha_grid"] = json::array();
  EXPECT_EQ(config_error_pointer(doc), "/alpha_grid");
  doc = minimal();
  doc["envelope"] = {{"grid_size", 2}};
  EXPECT_EQ(config_error_pointer(doc), "/envelope/grid_size");
  doc = minimal();
  doc["data"] = {{"m", "big"}};
  EXPECT_EQ(config_error_pointer(doc), "/data/m");
}

TEST(Config, GridStrings) {
  const GridSpec a = parse_grid_string("0.1:1:0.1", "/x");
  EXPECT_EQ(a.expand().size(), 10u);
  EXPECT_EQ(a.expand().back(), 1.0);
  const GridSpec b = parse_grid_string("0.5, 0.25,1", "/x");
  EXPECT_EQ(b.expand(), (std::vector<double>{0.5, 0.25, 1.0}));
  EXPECT_THROW(parse_grid_string("1:0:0.1", "/x"), ConfigError);
  EXPECT_THROW(parse_grid_string("a,b", "/x"), ConfigError);
  EXPECT_THROW(parse_grid_string("", "/x"), ConfigError);
}

TEST(Config, TabulatedPathIsRelativeToConfig) {
  test_util::TempDir dir("cfg_csv");
  fs::copy_file(fs::path(GOC_TEST_DATA_DIR) / "triangle.csv", dir.path() / "t.csv");
  json doc = minimal();
  doc["honest_noise"] = {{"kind", "tabulated"}, {"params", {{"csv", "t.csv"}}}};
  std::ofstream(dir.path() / "c.json") << doc.dump();
  const RunConfig cfg = load_config((dir.path() / "c.json").string());
  EXPECT_EQ(fs::path(cfg.honest_noise.csv), (dir.path() / "t.csv").lexically_normal());
  EXPECT_THROW(load_config((dir.path() / "missing.json").string()), ConfigError);
}

TEST(OutputDir, Precedence) {
  RunConfig cfg = parse_config(minimal());
  CommandOptions opts;
  ::unsetenv("GOC_OUTPUT_DIR");
  EXPECT_EQ(resolve_output_dir(opts, cfg), fs::path("goc_out"));
  ::setenv("GOC_OUTPUT_DIR", "/tmp/from_env", 1);
  EXPECT_EQ(resolve_output_dir(opts, cfg), fs::path("/tmp/from_env"));
  cfg.output_dir = "/tmp/from_config";
  EXPECT_EQ(resolve_output_dir(opts, cfg), fs::path("/tmp/from_config"));
  opts.out_dir = "/tmp/from_flag";
  EXPECT_EQ(resolve_output_dir(opts, cfg), fs::path("/tmp/from_flag"));
  ::unsetenv("GOC_OUTPUT_DIR");
}

TEST(Dispatch, UnknownCommandIsUsageError) {
  std::ostringstream out, err;
  EXPECT_EQ(dispatch("frobnicate", {}, out, err), kExitUsage);
  EXPECT_NE(err.str().find("validate-noise"), std::string::npos);
}

TEST(Dispatch, CommandNames) {
  EXPECT_EQ(command_names(),
            (std::vector<std::string>{"validate-noise", "tradeoff", "solve",
                                      "adversary", "simulate", "verify", "sweep"}));
}

TEST_F(CliRun, ConfigErrorIsStructuredJson) {
  json doc = quick();
  doc["eta"] = 1.5;
  std::ofstream(config_) << doc.dump();
  EXPECT_EQ(run("solve"), kExitUsage);
  const json e = json::parse(err_.str());
  EXPECT_EQ(e["error"]["type"], "config_error");
  EXPECT_EQ(e["error"]["pointer"], "/eta");
}

TEST_F(CliRun, FlagValidation) {
  CommandOptions opts;
  opts.alpha = 0.0;
  EXPECT_EQ(run("adversary", opts), kExitUsage);
  EXPECT_EQ(json::parse(err_.str())["error"]["pointer"], "--alpha");
  opts = {};
  opts.eta = 1.0;
  EXPECT_EQ(run("tradeoff", opts), kExitUsage);
  EXPECT_EQ(json::parse(err_.str())["error"]["pointer"], "--eta");
}

TEST_F(CliRun, ValidateNoise) {
  EXPECT_EQ(run("validate-noise"), kExitOk);
  const json v = json::parse(slurp(out("noise_validation.json")));
  EXPECT_TRUE(v["ok"].get<bool>());
  EXPECT_TRUE(fs::exists(out("resolved_config.json")));
}

TEST_F(CliRun, TradeoffArtifacts) {
  CommandOptions opts;
  opts.alphas = "0.5,1";
  EXPECT_EQ(run("tradeoff", opts), kExitOk);
  const std::string csv = slurp(out("tradeoff_curve.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha,c_formula,c_oracle,abs_diff");
  const json s = json::parse(slurp(out("tradeoff_summary.json")));
  EXPECT_TRUE(s["within_tolerance"].get<bool>());
  EXPECT_EQ(s["alphas"].size(), 2u);
  const std::string h = slurp(out("tradeoff_h.csv"));
  EXPECT_EQ(h.substr(0, h.find('\n')), "q,h,h_star,is_touch");
}

TEST_F(CliRun, SolveAndAdversary) {
  EXPECT_EQ(run("solve"), kExitOk);
  const json eq = json::parse(slurp(out("equilibrium.json")));
  EXPECT_EQ(eq["eta_star"], 2.0);
  EXPECT_TRUE(eq.contains("per_eta"));
  EXPECT_NEAR(eq["equilibrium"]["pa"].get<double>(), 0.71, 1e-12);

  CommandOptions opts;
  opts.alpha = 0.5;
  EXPECT_EQ(run("adversary", opts), kExitOk);
  const json adv = json::parse(slurp(out("adversary.json")));
  EXPECT_TRUE(adv["touch"].get<bool>());
  ASSERT_EQ(adv["atoms"].size(), 2u);
  EXPECT_NEAR(adv["atoms"][1]["location"].get<double>(), 2.0, 1e-10);
}

TEST_F(CliRun, SimulateAppendsRows) {
  CommandOptions opts;
  opts.alpha = 0.5;
  EXPECT_EQ(run("adversary", opts), kExitOk);
  CommandOptions sim;
  sim.adversary_path = out("adversary.json").string();
  EXPECT_EQ(run("simulate", sim), kExitOk);
  EXPECT_EQ(run("simulate", sim), kExitOk);
  const std::string csv = slurp(out("simulation.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  const json s = json::parse(slurp(out("simulation.json")));
  EXPECT_EQ(s["results"].size(), 2u);
  EXPECT_EQ(s["alpha"], 0.5);
}

TEST_F(CliRun, SimulateRejectsBadAdversaryFile) {
  std::ofstream(dir_.path() / "bad.json") << R"({"atoms": [{"location": 1, "weight": 0.3}]})";
  CommandOptions sim;
  sim.adversary_path = (dir_.path() / "bad.json").string();
  EXPECT_EQ(run("simulate", sim), kExitUsage);
}

TEST_F(CliRun, VerifyPasses) {
  EXPECT_EQ(run("verify"), kExitOk);
  const json v = json::parse(slurp(out("verify_report.json")));
  EXPECT_TRUE(v["exact_checks_passed"].get<bool>());
  EXPECT_EQ(v["scenario"]["checked"], 2000);
  EXPECT_EQ(v["dominance"]["candidates"], 5);
}

TEST_F(CliRun, SweepIsByteIdenticalOnRerun) {
  ASSERT_EQ(run("sweep", {}, "a"), kExitOk);
  ASSERT_EQ(run("sweep", {}, "b"), kExitOk);
  for (const char* f : {"sweep.csv", "sweep_report.json", "equilibrium.json",
                        "equilibrium_per_eta.csv", "tradeoff_curve.csv",
                        "tradeoff_h.csv", "tradeoff_summary.json",
                        "adversary.json", "resolved_config.json"}) {
    const std::string a = slurp(out(f, "a"));
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(out(f, "b"))) << f;
  }
  const std::string csv = slurp(out("sweep.csv", "a"));
  // header + 2 node counts x {alpha*, 0.5}
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

}  // namespace
}  // namespace goc
