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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace edgeplane {

/// Exit codes shared by the CLI: 0 success, 1 input error, 2 placement
/// infeasible.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitPlacementFailed = 2;

struct RunOptions {
  std::string scenario_path;
  std::string app_path;
  std::string script_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

/// Runs a scenario + descriptor + event script and writes plan.txt,
/// trace.txt, rollups.txt, and slc.txt into out_dir.
///
/// Script format, one command per line: `at <tick> <verb> [args]` with
/// verbs place | fail <node> | recover <node> | measure |
/// offload <site> <threshold> | snapshot | restore [snapshot_id].
/// Failures and recoveries take effect when the world steps into their
/// tick, before any same-tick verbs run.
int cmd_run(const RunOptions& options, std::ostream& diag);

/// Renders the three measurement tables from an ingest file.
int cmd_tables(const std::string& samples_path, std::ostream& out, std::ostream& diag);

/// Builds a 1-global/1-region hierarchy with n_agents, then provisions
/// n_units (address + zero-cost reservation) on one agent; prints wall time
/// and verification counters.
int cmd_scale_test(std::uint64_t n_agents, std::uint64_t n_units, std::ostream& out,
                   std::ostream& diag);

}  // namespace edgeplane
