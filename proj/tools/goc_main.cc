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

// Command-line front end. Parses flags with CLI11 and hands off to
// goc::dispatch.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "goc/commands.h"

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg game-of-coding solver and simulator", "goc"};
  app.require_subcommand(1);
  app.fallthrough();

  goc::CommandOptions opts;
  std::string config;
  std::string out;
  double eta = 0.0;
  double alpha = 0.0;
  std::string alphas;
  std::string adversary;

  app.add_option("--config", config, "JSON run configuration");
  app.add_option("--out", out, "Output directory");

  for (const std::string& name : goc::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    if (name == "tradeoff" || name == "adversary" || name == "simulate") {
      sub->add_option("--eta", eta, "Threshold multiplier (>= 2)");
    }
    if (name == "adversary" || name == "simulate") {
      sub->add_option("--alpha", alpha, "Target probability of acceptance");
    }
    if (name == "tradeoff") {
      sub->add_option("--alphas", alphas, "start:stop:step or a comma list");
    }
    if (name == "simulate") {
      sub->add_option("--adversary", adversary, "adversary.json to simulate");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << goc::usage();
    return goc::kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  auto given = [&](const std::string& flag) {
    for (const CLI::App* a : {static_cast<const CLI::App*>(&app), sub}) {
      const CLI::Option* o = a->get_option_no_throw(flag);
      if (o != nullptr && o->count() > 0) return true;
    }
    return false;
  };
  if (given("--config")) opts.config_path = config;
  if (given("--out")) opts.out_dir = out;
  if (given("--eta")) opts.eta = eta;
  if (given("--alpha")) opts.alpha = alpha;
  if (given("--alphas")) opts.alphas = alphas;
  if (given("--adversary")) opts.adversary_path = adversary;
  return goc::dispatch(sub->get_name(), opts, std::cout, std::cerr);
}
