// Copyright 2026 The Edgeplane Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>

#include <CLI11.hpp>

#include "edgeplane/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"edgeplane: deterministic control-plane simulator for edge CPS testbeds"};
  app.require_subcommand(1);

  edgeplane::RunOptions run_options;
  CLI::App* run = app.add_subcommand("run", "run a scenario + app descriptor + event script");
  run->add_option("--scenario", run_options.scenario_path, "scenario file")->required();
  run->add_option("--app", run_options.app_path, "application descriptor file")->required();
  run->add_option("--script", run_options.script_path, "event script file")->required();
  run->add_option("--out", run_options.out_dir, "output directory")->required();
  CLI::Option* seed =
      run->add_option("--seed", run_options.seed, "seed recorded in the trace (default 0)");

  std::string samples_path;
  CLI::App* tables =
      app.add_subcommand("tables", "render bandwidth/latency/cpu tables from samples");
  tables->add_option("--samples", samples_path, "measurement samples file")->required();

  std::uint64_t n_agents = 1;
  std::uint64_t n_units = 1;
  CLI::App* scale = app.add_subcommand("scale-test", "attach agents and provision units at scale");
  scale->add_option("--agents", n_agents, "number of agents")->required();
  scale->add_option("--units", n_units, "number of functional units")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    run_options.seed_set = seed->count() > 0;
    return edgeplane::cmd_run(run_options, std::cerr);
  }
  if (tables->parsed()) return edgeplane::cmd_tables(samples_path, std::cout, std::cerr);
  return edgeplane::cmd_scale_test(n_agents, n_units, std::cout, std::cerr);
}
