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

#include "goc/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "goc/errors.h"
#include "goc/kernel.h"
#include "goc/oracle.h"
#include "goc/simulator.h"
#include "goc/strategy.h"
#include "goc/tradeoff.h"

namespace goc {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kOracleTolerance = 5e-3;
constexpr double kPaIdentityTolerance = 1e-8;
constexpr double kMseIdentityTolerance = 1e-6;
constexpr int kIdentityAlphas = 50;
constexpr double kSigmas = 4.0;

struct Run {
  RunConfig cfg;
  json resolved;
  std::string hash;
  fs::path out;
  CommandOptions opts;
  HonestNoiseModel noise;
  std::ostream& log;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : ""; }

json opt_json(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

void write_json(const Run& run, const std::string& name, const json& doc) {
  write_file(run.out / name, doc.dump(2) + "\n");
  run.log << (run.out / name).string() << "\n";
}

void write_csv(const Run& run, const std::string& name, const std::string& text) {
  write_file(run.out / name, text);
  run.log << (run.out / name).string() << "\n";
}

HonestNoiseModel checked_noise(const RunConfig& cfg) {
  HonestNoiseModel noise = cfg.honest_noise.build();
  const ValidationReport report = validate(noise);
  if (!report.ok()) {
    std::string names;
    for (const auto& v : report.violations()) {
      names += (names.empty() ? "" : ", ") + v;
    }
    throw ConfigError("/honest_noise", "noise model fails validation: " + names);
  }
  return noise;
}

double pick_eta(const Run& run) {
  if (!run.opts.eta) return run.cfg.eta;
  if (!(*run.opts.eta >= 2.0) || !std::isfinite(*run.opts.eta)) {
    throw ConfigError("--eta", "eta must be >= 2");
  }
  return *run.opts.eta;
}

double pick_alpha(const Run& run) {
  if (!run.opts.alpha) return run.cfg.simulation.alpha;
  const double a = *run.opts.alpha;
  if (!(a > 0.0 && a <= 1.0)) throw ConfigError("--alpha", "alpha must lie in (0, 1]");
  return a;
}

json base_report(const Run& run) {
  return {{"config_hash", run.hash}, {"seed", run.cfg.simulation.seed}};
}

UtilitySpec utility_spec(const RunConfig& cfg) {
  return UtilitySpec(cfg.adversary, cfg.dc);
}

json atoms_json(const std::vector<Atom>& atoms) {
  json out = json::array();
  for (const Atom& a : atoms) {
    out.push_back({{"location", a.location}, {"weight", a.weight}});
  }
  return out;
}

json result_json(const SimulationResult& r) {
  return {{"pa_hat", r.pa_hat},
          {"pa_stderr", r.pa_stderr},
          {"mse_hat", opt_json(r.mse_hat)},
          {"mse_stderr", opt_json(r.mse_stderr)},
          {"accepted_count", r.accepted_count},
          {"trials", r.trials}};
}

// Each node count gets its own stream so runs for different N are
// independent samples.
std::uint64_t node_seed(const Run& run, int n_nodes) {
  return run.cfg.simulation.seed + static_cast<std::uint64_t>(n_nodes);
}

GameConfig game_config(const Run& run, double eta, int n_nodes,
                       std::uint64_t trials, std::uint64_t seed) {
  GameConfig g;
  g.n_nodes = n_nodes;
  g.eta = eta;
  g.data = run.cfg.data;
  g.noise = run.noise;
  g.trials = trials;
  g.seed = seed;
  g.workers = run.cfg.simulation.workers;
  g.chunk_size = run.cfg.simulation.chunk_size;
  return g;
}

// ---------------------------------------------------------------------------

int cmd_validate_noise(Run& run) {
  const ValidationReport report = validate(run.noise);
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  json doc = {{"config_hash", run.hash},
              {"kind", std::string(to_string(run.noise.kind()))},
              {"delta", run.noise.delta()},
              {"grid_points", kValidationGridPoints},
              {"ok", report.ok()},
              {"violations", report.violations()},
              {"checks", checks}};
  write_json(run, "noise_validation.json", doc);
  return report.ok() ? kExitOk : kExitFailure;
}

bool run_tradeoff(Run& run, double eta, const std::vector<double>& alphas,
                  json& summary) {
  const KernelContext ctx(run.noise, eta);
  const Envelope env = Envelope::build(ctx, run.cfg.envelope);
  const TradeoffCurve curve = build_curve(env, alphas);
  const TradeoffOracle oracle(run.noise, eta, run.cfg.oracle_grid);

  std::ostringstream csv;
  csv << "alpha,c_formula,c_oracle,abs_diff\n";
  double max_abs = 0.0;
  double max_scaled = 0.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double c = curve.values[i];
    const double o = oracle.max_mse(alphas[i]).value;
    const double d = std::abs(c - o);
    max_abs = std::max(max_abs, d);
    max_scaled = std::max(max_scaled, d / std::max(1.0, c));
    csv << num(alphas[i]) << ',' << num(c) << ',' << num(o) << ',' << num(d) << '\n';
  }
  write_csv(run, "tradeoff_curve.csv", csv.str());

  std::ostringstream hcsv;
  hcsv << "q,h,h_star,is_touch\n";
  const int n = run.cfg.envelope.grid_size;
  for (int i = 0; i <= n; ++i) {
    const double q = static_cast<double>(i) / n;
    const double h = env.h(q);
    const double hs = env.eval(q);
    const bool touch = hs - h <= env.touch_tolerance();
    hcsv << num(q) << ',' << num(h) << ',' << num(hs) << ',' << (touch ? 1 : 0)
         << '\n';
  }
  write_csv(run, "tradeoff_h.csv", hcsv.str());

  json chords = json::array();
  const auto& bp = env.breakpoints();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i].q + bp[i + 1].q);
    if (mid > 0.0 && !env.supporting_chord(mid).touch) {
      chords.push_back({{"q1", bp[i].q}, {"q2", bp[i + 1].q}});
    }
  }
  const bool ok = max_scaled <= kOracleTolerance;
  summary = {{"config_hash", run.hash},
             {"eta", eta},
             {"alphas", alphas},
             {"max_abs_diff", max_abs},
             {"max_scaled_diff", max_scaled},
             {"tolerance", kOracleTolerance},
             {"within_tolerance", ok},
             {"oracle_grid", run.cfg.oracle_grid},
             {"limit_at_zero", curve.limit_at_zero},
             {"h_at_one", env.eval(1.0)},
             {"breakpoints", bp.size()},
             {"touch_tolerance", env.touch_tolerance()},
             {"chords", chords}};
  write_json(run, "tradeoff_summary.json", summary);
  return ok;
}

int cmd_tradeoff(Run& run) {
  const double eta = pick_eta(run);
  GridSpec grid = run.cfg.tradeoff_alphas;
  if (run.opts.alphas) grid = parse_grid_string(*run.opts.alphas, "--alphas");
  std::vector<double> alphas;
  try {
    alphas = grid.expand();
  } catch (const DomainError& e) {
    throw ConfigError("--alphas", e.what());
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw ConfigError("--alphas", "alpha values must lie in (0, 1]");
    }
  }
  json summary;
  return run_tradeoff(run, eta, alphas, summary) ? kExitOk : kExitFailure;
}

EquilibriumReport run_solve(Run& run) {
  const std::vector<double> etas = run.cfg.eta_grid.expand();
  const std::vector<double> alphas = run.cfg.alpha_grid.expand();
  const std::vector<KernelContext> ctxs = make_contexts(run.noise, etas);
  const UtilitySpec spec = utility_spec(run.cfg);
  const EquilibriumReport report = solve_equilibrium(
      ctxs, spec, alphas, run.cfg.envelope, run.cfg.simulation.workers);

  json per_eta = json::array();
  std::ostringstream csv;
  csv << "eta,dc_guaranteed_utility,worst_alpha,mse,adversary_utility,tie_count\n";
  for (const EtaEntry& e : report.per_eta) {
    per_eta.push_back({{"eta", e.eta},
                       {"best_alphas", e.best_alphas},
                       {"dc_guaranteed_utility", e.dc_guaranteed_utility},
                       {"worst_alpha", e.worst_alpha},
                       {"mse", e.mse},
                       {"adversary_utility", e.adversary_utility}});
    csv << num(e.eta) << ',' << num(e.dc_guaranteed_utility) << ','
        << num(e.worst_alpha) << ',' << num(e.mse) << ','
        << num(e.adversary_utility) << ',' << e.best_alphas.size() << '\n';
  }
  const EtaEntry& star = report.per_eta[report.star_index];
  json doc = {{"config_hash", run.hash},
              {"eta_star", report.eta_star},
              {"at_eta_max", report.at_eta_max},
              {"equilibrium", {{"mse", report.mse_star}, {"pa", report.pa_star}}},
              {"adversary_utility", report.adversary_utility_at_eq},
              {"dc_utility", star.dc_guaranteed_utility},
              {"best_alphas", star.best_alphas},
              {"per_eta", per_eta}};
  write_json(run, "equilibrium.json", doc);
  write_csv(run, "equilibrium_per_eta.csv", csv.str());
  return report;
}

int cmd_solve(Run& run) {
  run_solve(run);
  return kExitOk;
}

AtomicAdversary write_adversary(Run& run, const Envelope& env, double alpha) {
  const KernelContext& ctx = *env.context();
  const AtomicAdversary adv = build_adversary(env, alpha);
  double pa = 0.0;
  double nu = 0.0;
  for (const Atom& a : adv.atoms) {
    pa += a.weight * ctx.k_eta(std::abs(a.location));
    nu += a.weight * ctx.nu_eta(std::abs(a.location));
  }
  json doc = {{"config_hash", run.hash},
              {"eta", adv.eta},
              {"delta", ctx.delta()},
              {"alpha", adv.alpha},
              {"touch", adv.touch},
              {"q1", adv.q1},
              {"q2", adv.q2},
              {"c_alpha", c_alpha(env, alpha)},
              {"achieved_pa", pa},
              {"achieved_mse", nu / (4.0 * alpha)},
              {"atoms", atoms_json(adv.atoms)}};
  write_json(run, "adversary.json", doc);
  return adv;
}

int cmd_adversary(Run& run) {
  const double eta = pick_eta(run);
  const double alpha = pick_alpha(run);
  const Envelope env = Envelope::build(KernelContext(run.noise, eta), run.cfg.envelope);
  write_adversary(run, env, alpha);
  return kExitOk;
}

struct LoadedAdversary {
  std::vector<Atom> atoms;
  std::optional<double> eta;
  std::optional<double> alpha;
};

LoadedAdversary load_adversary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--adversary", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--adversary", std::string("invalid JSON: ") + e.what());
  }
  LoadedAdversary out;
  if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array()) {
    throw ConfigError("--adversary", "expected an object with an 'atoms' array");
  }
  for (const json& a : doc["atoms"]) {
    if (!a.is_object() || !a.contains("location") || !a.contains("weight") ||
        !a["location"].is_number() || !a["weight"].is_number()) {
      throw ConfigError("--adversary", "atoms need numeric location and weight");
    }
    out.atoms.push_back({a["location"].get<double>(), a["weight"].get<double>()});
  }
  if (doc.contains("eta") && doc["eta"].is_number()) out.eta = doc["eta"].get<double>();
  if (doc.contains("alpha") && doc["alpha"].is_number()) {
    out.alpha = doc["alpha"].get<double>();
  }
  return out;
}

int cmd_simulate(Run& run) {
  std::vector<Atom> atoms;
  double eta = run.cfg.eta;
  std::optional<double> alpha;
  std::optional<double> c_theory;
  if (run.opts.adversary_path) {
    LoadedAdversary loaded = load_adversary(*run.opts.adversary_path);
    atoms = loaded.atoms;
    if (loaded.eta) eta = *loaded.eta;
    if (run.opts.eta) eta = pick_eta(run);
    alpha = loaded.alpha;
  } else {
    eta = pick_eta(run);
    alpha = pick_alpha(run);
    const Envelope env =
        Envelope::build(KernelContext(run.noise, eta), run.cfg.envelope);
    atoms = build_adversary(env, *alpha).atoms;
    c_theory = c_alpha(env, *alpha);
  }
  AtomDistribution dist = [&] {
    try {
      return AtomDistribution(atoms);
    } catch (const DomainError& e) {
      throw ConfigError("--adversary", e.what());
    }
  }();

  const fs::path csv_path = run.out / "simulation.csv";
  const bool fresh = !fs::exists(csv_path);
  std::ofstream csv(csv_path, std::ios::binary | std::ios::app);
  if (!csv) throw std::runtime_error("cannot write '" + csv_path.string() + "'");
  if (fresh) csv << "n_nodes,eta,alpha,pa_hat,mse_hat,pa_stderr,mse_stderr,seed\n";

  json results = json::array();
  for (int n : run.cfg.simulation.n_nodes) {
    const GameConfig g =
        game_config(run, eta, n, run.cfg.simulation.trials, node_seed(run, n));
    const SimulationResult r =
        run_monte_carlo(g, AdversaryStrategy::replicated(dist, n - 1));
    json row = result_json(r);
    row["n_nodes"] = n;
    row["seed"] = g.seed;
    results.push_back(row);
    csv << n << ',' << num(eta) << ',' << num(alpha) << ',' << num(r.pa_hat) << ','
        << num(r.mse_hat) << ',' << num(r.pa_stderr) << ',' << num(r.mse_stderr)
        << ',' << g.seed << '\n';
  }
  run.log << csv_path.string() << "\n";

  json doc = base_report(run);
  doc["eta"] = eta;
  doc["alpha"] = opt_json(alpha);
  doc["c_alpha"] = opt_json(c_theory);
  doc["trials"] = run.cfg.simulation.trials;
  doc["atoms"] = atoms_json(atoms);
  doc["results"] = results;
  write_json(run, "simulation.json", doc);
  return kExitOk;
}

int cmd_verify(Run& run) {
  const double eta = run.cfg.eta;
  const double delta = run.noise.delta();
  const VerifySpec& v = run.cfg.verify;
  int max_nodes = v.n_nodes;
  for (int n : run.cfg.simulation.n_nodes) max_nodes = std::max(max_nodes, n);

  const ScenarioSuiteResult scen = run_scenario_suite(
      run.noise, eta, max_nodes - 1, v.realizations, run.cfg.simulation.seed);
  const bool scen_ok = scen.ok() && scen.checked == v.realizations;

  const KernelContext ctx(run.noise, eta);
  const Envelope env = Envelope::build(ctx, run.cfg.envelope);
  double max_pa_err = 0.0;
  double max_mse_err = 0.0;
  int touch_count = 0;
  for (int i = 1; i <= kIdentityAlphas; ++i) {
    const double alpha = static_cast<double>(i) / kIdentityAlphas;
    const AtomicAdversary adv = build_adversary(env, alpha);
    if (adv.touch) ++touch_count;
    double pa = 0.0;
    double nu = 0.0;
    for (const Atom& a : adv.atoms) {
      pa += a.weight * ctx.k_eta(std::abs(a.location));
      nu += a.weight * ctx.nu_eta(std::abs(a.location));
    }
    max_pa_err = std::max(max_pa_err, std::abs(pa - alpha));
    max_mse_err = std::max(max_mse_err, std::abs(nu / (4.0 * alpha) - c_alpha(env, alpha)));
  }
  const bool ident_ok =
      max_pa_err <= kPaIdentityTolerance && max_mse_err <= kMseIdentityTolerance;

  const UtilitySpec spec = utility_spec(run.cfg);
  const std::vector<double> alphas = run.cfg.alpha_grid.expand();
  const double alpha_star = best_alpha_set(env, spec, alphas).front();
  const AtomicAdversary fstar = build_adversary(env, alpha_star);
  const int n = v.n_nodes;
  std::vector<AdversaryStrategy> candidates;
  CounterRng rng(run.cfg.simulation.seed, 1);
  for (int i = 0; i < v.candidates; ++i) {
    candidates.push_back(AdversaryStrategy::replicated(
        random_atomic_distribution(rng, eta, delta), n - 1));
  }
  for (int i = 0; i < v.iid_candidates; ++i) {
    AtomDistribution dist = i == 0 ? AtomDistribution(fstar.atoms)
                                   : random_atomic_distribution(rng, eta, delta);
    candidates.push_back(AdversaryStrategy::iid(std::move(dist), n - 1));
  }
  const GameConfig g = game_config(run, eta, n, v.trials, run.cfg.simulation.seed);
  const DominanceReport dom = dominance_check(
      g, spec, candidates, replicate_gstar(fstar, n));
  json entries = json::array();
  for (const auto& e : dom.entries) {
    entries.push_back({{"label", e.label},
                       {"pa_hat", e.result.pa_hat},
                       {"mse_hat", opt_json(e.result.mse_hat)},
                       {"utility", e.utility},
                       {"utility_stderr", e.utility_stderr},
                       {"no_acceptance", e.no_acceptance},
                       {"violation", e.violation}});
  }

  json doc = base_report(run);
  doc["eta"] = eta;
  doc["scenario"] = {{"requested", v.realizations},
                     {"checked", scen.checked},
                     {"skipped", scen.skipped},
                     {"accepted", scen.accepted},
                     {"accept_failures", scen.accept_failures},
                     {"ordering_failures", scen.ordering_failures},
                     {"reduction_failures", scen.reduction_failures},
                     {"passed", scen_ok}};
  doc["identities"] = {{"alphas_checked", kIdentityAlphas},
                       {"touch_cases", touch_count},
                       {"max_pa_error", max_pa_err},
                       {"max_mse_error", max_mse_err},
                       {"pa_tolerance", kPaIdentityTolerance},
                       {"mse_tolerance", kMseIdentityTolerance},
                       {"passed", ident_ok}};
  doc["dominance"] = {{"n_nodes", n},
                      {"trials", v.trials},
                      {"alpha_star", alpha_star},
                      {"optimum", result_json(dom.optimum)},
                      {"optimum_utility", dom.optimum_utility},
                      {"optimum_stderr", dom.optimum_stderr},
                      {"candidates", candidates.size()},
                      {"violations", dom.violations},
                      {"flagged", dom.flagged},
                      {"sigmas", kSigmas},
                      {"passed", dom.violations == 0},
                      {"entries", entries}};
  doc["exact_checks_passed"] = scen_ok && ident_ok;
  write_json(run, "verify_report.json", doc);
  return scen_ok && ident_ok ? kExitOk : kExitFailure;
}

int cmd_sweep(Run& run) {
  const EquilibriumReport eq = run_solve(run);
  const double eta = eq.eta_star;
  const double alpha_star = eq.pa_star;

  json tradeoff_summary;
  const bool tradeoff_ok =
      run_tradeoff(run, eta, run.cfg.tradeoff_alphas.expand(), tradeoff_summary);

  const Envelope env = Envelope::build(KernelContext(run.noise, eta), run.cfg.envelope);
  write_adversary(run, env, alpha_star);

  std::vector<double> sim_alphas{alpha_star, run.cfg.simulation.alpha};
  std::sort(sim_alphas.begin(), sim_alphas.end());
  sim_alphas.erase(std::unique(sim_alphas.begin(), sim_alphas.end()), sim_alphas.end());

  std::ostringstream csv;
  csv << "n_nodes,eta,alpha,c_alpha,pa_hat,mse_hat,pa_stderr,mse_stderr,seed\n";
  json rows = json::array();
  json invariance = json::array();
  for (double alpha : sim_alphas) {
    const AtomicAdversary fstar = build_adversary(env, alpha);
    const double c = c_alpha(env, alpha);
    std::vector<SimulationResult> results;
    for (int n : run.cfg.simulation.n_nodes) {
      const GameConfig g =
          game_config(run, eta, n, run.cfg.simulation.trials, node_seed(run, n));
      const SimulationResult r = run_monte_carlo(g, replicate_gstar(fstar, n));
      results.push_back(r);
      json row = result_json(r);
      row["n_nodes"] = n;
      row["seed"] = g.seed;
      row["eta"] = eta;
      row["alpha"] = alpha;
      row["c_alpha"] = c;
      rows.push_back(row);
      csv << n << ',' << num(eta) << ',' << num(alpha) << ',' << num(c) << ','
          << num(r.pa_hat) << ',' << num(r.mse_hat) << ',' << num(r.pa_stderr)
          << ',' << num(r.mse_stderr) << ',' << g.seed << '\n';
    }
    double max_pa_z = 0.0;
    double max_mse_z = 0.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      for (std::size_t j = i + 1; j < results.size(); ++j) {
        const auto& a = results[i];
        const auto& b = results[j];
        const double spa = std::hypot(a.pa_stderr, b.pa_stderr);
        if (spa > 0.0) max_pa_z = std::max(max_pa_z, std::abs(a.pa_hat - b.pa_hat) / spa);
        if (a.mse_hat && b.mse_hat) {
          const double sm = std::hypot(*a.mse_stderr, *b.mse_stderr);
          if (sm > 0.0) {
            max_mse_z = std::max(max_mse_z, std::abs(*a.mse_hat - *b.mse_hat) / sm);
          }
        }
      }
    }
    invariance.push_back({{"alpha", alpha},
                          {"max_pa_z", max_pa_z},
                          {"max_mse_z", max_mse_z},
                          {"within_4_sigma", max_pa_z <= kSigmas && max_mse_z <= kSigmas}});
  }
  write_csv(run, "sweep.csv", csv.str());

  json doc = base_report(run);
  doc["eta_star"] = eta;
  doc["alpha_star"] = alpha_star;
  doc["at_eta_max"] = eq.at_eta_max;
  doc["equilibrium"] = {{"mse", eq.mse_star}, {"pa", eq.pa_star}};
  doc["adversary_utility"] = eq.adversary_utility_at_eq;
  doc["tradeoff_within_tolerance"] = tradeoff_ok;
  doc["trials"] = run.cfg.simulation.trials;
  doc["rows"] = rows;
  doc["n_invariance"] = invariance;
  write_json(run, "sweep_report.json", doc);
  return tradeoff_ok ? kExitOk : kExitFailure;
}

void report_error(std::ostream& err, const std::string& type,
                  const std::string& message, const std::string& pointer = "") {
  json e = {{"type", type}, {"message", message}};
  if (!pointer.empty()) e["pointer"] = pointer;
  err << json{{"error", e}}.dump() << "\n";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "validate-noise", "tradeoff", "solve", "adversary",
      "simulate",       "verify",   "sweep"};
  return names;
}

std::string usage() {
  return "usage: goc <command> [--config FILE] [--out DIR] [options]\n"
         "commands:\n"
         "  validate-noise   check the honest noise model\n"
         "  tradeoff         c(alpha) against the brute-force oracle "
         "[--eta E] [--alphas SPEC]\n"
         "  solve            equilibrium threshold over the eta grid\n"
         "  adversary        optimal atomic adversary [--eta E] [--alpha A]\n"
         "  simulate         Monte Carlo game [--adversary FILE] [--eta E] "
         "[--alpha A]\n"
         "  verify           scenario, identity and dominance suites\n"
         "  sweep            solve, tradeoff, adversary and simulate in one run\n";
}

fs::path resolve_output_dir(const CommandOptions& opts, const RunConfig& cfg) {
  if (opts.out_dir) return *opts.out_dir;
  if (cfg.output_dir) return *cfg.output_dir;
  if (const char* env = std::getenv("GOC_OUTPUT_DIR"); env && *env) return env;
  return "goc_out";
}

int dispatch(const std::string& command, const CommandOptions& opts,
             std::ostream& out, std::ostream& err) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    err << "unknown command '" << command << "'\n" << usage();
    return kExitUsage;
  }
  try {
    RunConfig cfg = opts.config_path ? load_config(*opts.config_path)
                                     : parse_config(default_config_json());
    json resolved = resolved_json(cfg);
    const std::string hash = config_hash(resolved);
    const fs::path dir = resolve_output_dir(opts, cfg);
    HonestNoiseModel noise = command == "validate-noise"
                                 ? cfg.honest_noise.build()
                                 : checked_noise(cfg);
    fs::create_directories(dir);
    Run run{std::move(cfg), std::move(resolved), hash, dir, opts, std::move(noise),
            out};
    write_json(run, "resolved_config.json", run.resolved);

    if (command == "validate-noise") return cmd_validate_noise(run);
    if (command == "tradeoff") return cmd_tradeoff(run);
    if (command == "solve") return cmd_solve(run);
    if (command == "adversary") return cmd_adversary(run);
    if (command == "simulate") return cmd_simulate(run);
    if (command == "verify") return cmd_verify(run);
    return cmd_sweep(run);
  } catch (const ConfigError& e) {
    report_error(err, "config_error", e.what(), e.pointer().empty() ? "/" : e.pointer());
    return kExitUsage;
  } catch (const DomainError& e) {
    report_error(err, "domain_error", e.what());
  } catch (const NumericalError& e) {
    report_error(err, "numerical_error", e.what());
  } catch (const UndefinedConditionalError& e) {
    report_error(err, "undefined_conditional", e.what());
  } catch (const ConditioningError& e) {
    report_error(err, "conditioning_error", e.what());
  } catch (const std::exception& e) {
    report_error(err, "error", e.what());
  }
  return kExitFailure;
}

}  // namespace goc
