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

#include "edgeplane/runner.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "edgeplane/addressing.hpp"
#include "edgeplane/appdesc.hpp"
#include "edgeplane/monitor.hpp"
#include "edgeplane/placement.hpp"
#include "edgeplane/qos.hpp"
#include "edgeplane/simnet.hpp"

namespace edgeplane {

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ScriptCommand {
  std::uint64_t tick = 0;
  std::string verb;
  std::vector<std::string> args;
  int line_no = 0;
};

std::vector<ScriptCommand> parse_script(const std::string& text) {
  std::vector<ScriptCommand> commands;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream lin(raw);
    std::string at;
    if (!(lin >> at)) continue;
    ScriptCommand cmd;
    cmd.line_no = line_no;
    std::string tick_text;
    if (at != "at" || !(lin >> tick_text) || !(lin >> cmd.verb))
      throw SimError(Errc::syntax_error,
                     "script line " + std::to_string(line_no) + ": want `at <tick> <verb>`");
    for (char c : tick_text)
      if (c < '0' || c > '9')
        throw SimError(Errc::syntax_error,
                       "script line " + std::to_string(line_no) + ": bad tick");
    cmd.tick = std::stoull(tick_text);
    std::string arg;
    while (lin >> arg) cmd.args.push_back(arg);

    static const std::set<std::string> verbs = {"place",   "fail",    "recover", "measure",
                                                "offload", "snapshot", "restore"};
    if (!verbs.contains(cmd.verb))
      throw SimError(Errc::syntax_error, "script line " + std::to_string(line_no) +
                                             ": unknown verb '" + cmd.verb + "'");
    commands.push_back(std::move(cmd));
  }
  std::stable_sort(commands.begin(), commands.end(),
                   [](const ScriptCommand& a, const ScriptCommand& b) { return a.tick < b.tick; });
  return commands;
}

struct AttributedSample {
  std::uint64_t tick = 0;
  std::string agent_scope;      // "region/agent"; empty for substrate probes
  std::string reservation_id;   // empty for unattributed probes
  MeasurementSample sample;
};

/// Everything one scenario run owns. Keeping it a plain value makes the
/// snapshot-vs-reassign comparison and rollback paths copies.
struct RunState {
  World world;
  AppDescriptor descriptor;
  Hierarchy hierarchy;
  Inventory inventory;
  LedgerMap host_ledgers;
  AllocationLedger addresses;
  std::optional<PlacementPlan> plan;
  Registry registry;
  std::map<std::string, Snapshot> snapshots;
  std::string last_snapshot_id;
  std::map<std::string, std::vector<std::string>> edge_paths;  // edge rid -> link ids
  std::vector<AttributedSample> samples;
  std::vector<std::string> trace;

  RunState(World w, AppDescriptor d)
      : world(std::move(w)),
        descriptor(std::move(d)),
        hierarchy(Hierarchy::build(world.hierarchy_config())),
        inventory(Inventory::from_hierarchy(hierarchy)),
        addresses(Ipv6Prefix::parse(world.pool())) {
    for (const auto& [host_id, host] : world.hosts()) {
      inventory.host_site[host_id] = host.site_id;
      host_ledgers.emplace(
          host_id, CapacityLedger(host_id, host.bandwidth_capacity_kbps, host.cpu_capacity_cores));
    }
    for (const SiteSpec& site : world.sites()) addresses.allocate_site(site.site_id);
    for (const std::string& host_id : world.host_order())
      addresses.allocate_host_prefix(world.hosts().at(host_id).site_id, host_id);
  }

  void log(const std::string& kind, const std::string& detail) {
    trace.push_back(std::to_string(world.tick()) + "\t" + kind + "\t" + detail);
  }

  std::string host_of_unit(const std::string& unit_id) const {
    return inventory.agents.at(plan->assignments.at(unit_id).agent).host_ref;
  }

  static std::string edge_rid(const std::string& app_id, const DataflowEdge& e) {
    return app_id + ":" + e.producer + "->" + e.consumer;
  }

  void release_edge_reservations() {
    for (const auto& [rid, links] : edge_paths)
      for (const std::string& link_id : links) {
        auto& ledger = world.link_ledgers().at(link_id);
        if (ledger.find(rid)) ledger.release(rid);
      }
    edge_paths.clear();
  }

  /// (Re)reserves every dataflow edge's bandwidth along the current live
  /// path between its endpoints.
  void reserve_edge_reservations() {
    release_edge_reservations();
    if (!plan) return;
    for (const DataflowEdge& e : descriptor.edges) {
      if (!plan->assignments.contains(e.producer) || !plan->assignments.contains(e.consumer))
        continue;
      const std::string rid = edge_rid(descriptor.app_id, e);
      std::vector<std::string> path;
      try {
        path = world.path_links(host_of_unit(e.producer), host_of_unit(e.consumer));
      } catch (const SimError&) {
        log("edge_unreachable", "edge=" + rid);
        continue;
      }
      CirReservation r;
      r.reservation_id = rid;
      r.bandwidth_kbps = e.bandwidth_kbps;
      r.latency_budget_ms = e.latency_budget_ms;
      r.cpu_scale = Rational(0);
      r.holder = rid;
      bool ok = true;
      std::vector<std::string> admitted;
      for (const std::string& link_id : path) {
        if (world.link_ledgers().at(link_id).admit(r)) {
          ok = false;
          break;
        }
        admitted.push_back(link_id);
      }
      if (!ok) {
        for (const std::string& link_id : admitted) world.link_ledgers().at(link_id).release(rid);
        log("edge_reserve_failed", "edge=" + rid);
        continue;
      }
      edge_paths.emplace(rid, std::move(path));
    }
  }

  void handle_world_events(const std::vector<SimEvent>& events) {
    for (const SimEvent& e : events) {
      log(std::string(event_kind_name(e.kind)), e.payload);
      switch (e.kind) {
        case EventKind::host_fail: {
          std::string node = payload_value(e.payload, "node");
          inventory.set_host_alive(node, false);
          if (plan) {
            ReassignReport report = reassign_on_failure(*plan, node, descriptor, inventory,
                                                        host_ledgers, addresses);
            reserve_edge_reservations();
            log("reassign", "moved=" + join(report.moved) + " failed=" + join(report.failed));
          }
          break;
        }
        case EventKind::host_recover:
          inventory.set_host_alive(payload_value(e.payload, "node"), true);
          break;
        case EventKind::link_fail:
          reserve_edge_reservations();
          break;
        case EventKind::traffic: {
          std::string link = payload_value(e.payload, "link");
          Rational offered = Rational::parse(payload_value(e.payload, "offered"));
          try {
            record_sample("", "", world.measure_throughput(link, offered));
          } catch (const SimError& err) {
            log("probe_failed", std::string(errc_name(err.code())) + " link=" + link);
          }
          break;
        }
        case EventKind::measure: {
          std::string src = payload_value(e.payload, "src");
          std::string dst = payload_value(e.payload, "dst");
          try {
            record_sample("", "", world.measure_path(src, dst));
          } catch (const SimError& err) {
            log("probe_failed", std::string(errc_name(err.code())) + " src=" + src + " dst=" + dst);
          }
          break;
        }
      }
    }
  }

  void step_to(std::uint64_t tick) {
    while (world.tick() < tick) handle_world_events(world.step());
  }

  void record_sample(const std::string& agent_scope, const std::string& rid,
                     MeasurementSample sample) {
    samples.push_back(AttributedSample{world.tick(), agent_scope, rid, std::move(sample)});
  }

  /// One measurement pass over the deployed application: a cpu and a
  /// bandwidth sample per placed unit, a latency and a bandwidth sample per
  /// dataflow edge.
  std::size_t measure_deployment() {
    if (!plan) return 0;
    std::size_t emitted = 0;
    for (const FunctionalUnit& unit : descriptor.units) {
      auto it = plan->assignments.find(unit.unit_id);
      if (it == plan->assignments.end()) continue;
      const std::string host_id = inventory.agents.at(it->second.agent).host_ref;
      const HostSpec& host = world.hosts().at(host_id);
      const std::string rid = descriptor.app_id + ":" + unit.unit_id;
      const std::string scope = it->second.agent.to_string();

      if (unit.request.cpu_scale > Rational(0) && host.cpu_reference_score > Rational(0)) {
        CalibrationParams params{host.cpu_reference_score, world.overhead()};
        MeasurementSample s;
        s.kind = MetricKind::cpu;
        s.nominal = unit.request.cpu_scale;
        s.observed = {predict_simulated_score(unit.request.cpu_scale, params)};
        s.units = "score";
        record_sample(scope, rid, std::move(s));
        ++emitted;
      }
      if (unit.request.bandwidth_kbps > Rational(0)) {
        // An admitted CIR holder is guaranteed its committed rate.
        MeasurementSample s;
        s.kind = MetricKind::bandwidth;
        s.nominal = unit.request.bandwidth_kbps;
        s.observed = {unit.request.bandwidth_kbps};
        s.units = "kbps";
        record_sample(scope, rid, std::move(s));
        ++emitted;
      }
    }
    for (const DataflowEdge& e : descriptor.edges) {
      if (!plan->assignments.contains(e.producer) || !plan->assignments.contains(e.consumer))
        continue;
      const std::string rid = edge_rid(descriptor.app_id, e);
      const std::string scope = plan->assignments.at(e.producer).agent.to_string();
      try {
        MeasurementSample latency = world.measure_path(host_of_unit(e.producer),
                                                       host_of_unit(e.consumer));
        record_sample(scope, rid, std::move(latency));
        ++emitted;

        MeasurementSample bw;
        bw.kind = MetricKind::bandwidth;
        bw.nominal = e.bandwidth_kbps;
        bw.units = "kbps";
        Rational delivered = e.bandwidth_kbps;
        auto path = edge_paths.find(rid);
        if (path != edge_paths.end()) {
          for (const std::string& link_id : path->second) {
            Rational on_link =
                world.measure_throughput(link_id, e.bandwidth_kbps, rid).observed.front();
            if (on_link < delivered) delivered = on_link;
          }
        }
        bw.observed = {delivered};
        record_sample(scope, rid, std::move(bw));
        ++emitted;
      } catch (const SimError&) {
        log("measure_unreachable", "edge=" + rid);
      }
    }
    return emitted;
  }

  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const std::string& item : items) {
      if (!out.empty()) out += ',';
      out += item;
    }
    return out;
  }

  static std::string payload_value(const std::string& payload, const std::string& key) {
    std::istringstream in(payload);
    std::string tok;
    while (in >> tok)
      if (tok.starts_with(key + "=")) return tok.substr(key.size() + 1);
    throw SimError(Errc::syntax_error, "event payload lacks '" + key + "='");
  }
};

std::string render_rollups(const RunState& state) {
  // Agent rollups from attributed samples, merged up to regions, then a
  // global merge that also folds in substrate probes.
  std::map<std::pair<std::string, MetricKind>, std::vector<TimedSample>> by_agent;
  std::map<MetricKind, std::vector<TimedSample>> unattributed;
  for (const AttributedSample& s : state.samples) {
    TimedSample ts{s.tick, s.sample};
    if (s.agent_scope.empty())
      unattributed[s.sample.kind].push_back(std::move(ts));
    else
      by_agent[{s.agent_scope, s.sample.kind}].push_back(std::move(ts));
  }

  std::uint64_t window_end = state.world.tick();
  std::string out;
  std::map<std::pair<std::string, MetricKind>, std::vector<MetricRollup>> by_region;
  std::map<MetricKind, std::vector<MetricRollup>> for_global;
  auto emit = [&out](const MetricRollup& r) {
    out += std::string(scope_name(r.scope)) + "\t" + r.scope_id + "\t" +
           std::string(metric_kind_name(r.kind)) + "\t" + std::to_string(r.count) + "\t" +
           r.min.round_decimals(3).to_string() + "\t" + r.avg_rounded().to_string() + "\t" +
           r.max.round_decimals(3).to_string() + "\n";
  };

  for (const auto& [key, samples] : by_agent) {
    MetricRollup r = aggregate(samples, Scope::agent, key.first, 0, window_end);
    emit(r);
    std::string region = key.first.substr(0, key.first.find('/'));
    by_region[{region, key.second}].push_back(r);
  }
  for (const auto& [key, rollups] : by_region) {
    MetricRollup r = merge_rollups(rollups, Scope::region, key.first);
    emit(r);
    for_global[key.second].push_back(r);
  }
  for (const auto& [kind, samples] : unattributed)
    for_global[kind].push_back(
        aggregate(samples, Scope::global_scope, "substrate", 0, window_end));
  for (const auto& [kind, rollups] : for_global)
    emit(merge_rollups(rollups, Scope::global_scope, state.hierarchy.global_id()));
  return out;
}

std::string render_slc(const RunState& state) {
  // reservation id -> committed terms, with the cpu dimension calibrated
  // against the unit's current host.
  std::map<std::pair<std::string, MetricKind>, std::vector<TimedSample>> by_reservation;
  for (const AttributedSample& s : state.samples)
    if (!s.reservation_id.empty())
      by_reservation[{s.reservation_id, s.sample.kind}].push_back(TimedSample{s.tick, s.sample});

  std::string out;
  for (const auto& [key, samples] : by_reservation) {
    const auto& [rid, kind] = key;
    MetricRollup rollup =
        aggregate(samples, Scope::agent, rid, 0, state.world.tick());

    CirReservation committed;
    committed.reservation_id = rid;
    CalibrationParams params;
    bool found = false;
    for (const FunctionalUnit& unit : state.descriptor.units) {
      if (rid != state.descriptor.app_id + ":" + unit.unit_id) continue;
      committed.bandwidth_kbps = unit.request.bandwidth_kbps;
      committed.latency_budget_ms = unit.request.latency_budget_ms;
      committed.cpu_scale = unit.request.cpu_scale;
      if (state.plan && state.plan->assignments.contains(unit.unit_id)) {
        const HostSpec& host = state.world.hosts().at(state.host_of_unit(unit.unit_id));
        if (host.cpu_reference_score > Rational(0))
          params = CalibrationParams{host.cpu_reference_score, state.world.overhead()};
      }
      found = true;
      break;
    }
    if (!found) {
      for (const DataflowEdge& e : state.descriptor.edges) {
        if (rid != RunState::edge_rid(state.descriptor.app_id, e)) continue;
        committed.bandwidth_kbps = e.bandwidth_kbps;
        committed.latency_budget_ms = e.latency_budget_ms;
        committed.cpu_scale = Rational(0);
        found = true;
        break;
      }
    }
    if (!found) continue;

    SlcReport report =
        verify_slc(committed, rollup, state.descriptor.slc_tolerance_percent, params);
    std::string verdict = report.overdelivery ? "overdelivery"
                          : report.met        ? "met"
                                              : "violated";
    std::string error = report.error_percent() ? report.error_percent()->to_decimal(2) + "%" : "-";
    out += rid + "\t" + std::string(metric_kind_name(kind)) + "\t" +
           report.committed.round_decimals(3).to_string() + "\t" +
           report.observed.round_decimals(3).to_string() + "\t" + error + "\t" + verdict +
           "\n";
  }
  return out;
}

void write_output(const std::filesystem::path& dir, const std::string& name,
                  const std::string& content) {
  std::ofstream out(dir / name, std::ios::binary);
  out << content;
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& diag) {
  std::optional<std::string> scenario_text = read_file(options.scenario_path);
  if (!scenario_text) {
    diag << "error: cannot read scenario file '" << options.scenario_path << "'\n";
    return kExitInputError;
  }
  std::optional<std::string> app_text = read_file(options.app_path);
  if (!app_text) {
    diag << "error: cannot read app file '" << options.app_path << "'\n";
    return kExitInputError;
  }
  std::optional<std::string> script_text = read_file(options.script_path);
  if (!script_text) {
    diag << "error: cannot read script file '" << options.script_path << "'\n";
    return kExitInputError;
  }

  std::filesystem::path out_dir(options.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    diag << "error: cannot create output directory '" << options.out_dir << "'\n";
    return kExitInputError;
  }

  try {
    World world = World::load_scenario(*scenario_text);
    if (options.seed_set) world.set_seed(options.seed);
    AppDescriptor descriptor = parse_descriptor(*app_text);
    std::vector<ScriptCommand> script = parse_script(*script_text);

    // A script without an explicit place step deploys the app up front.
    if (std::none_of(script.begin(), script.end(),
                     [](const ScriptCommand& c) { return c.verb == "place"; })) {
      ScriptCommand implicit;
      implicit.verb = "place";
      script.insert(script.begin(), implicit);
    }

    RunState state(std::move(world), std::move(descriptor));
    state.log("start", "seed=" + std::to_string(state.world.seed()) +
                           " app=" + state.descriptor.app_id);

    // Failures and recoveries become world events up front so they fire in
    // tick order regardless of script line order.
    for (const ScriptCommand& cmd : script) {
      if (cmd.verb == "fail") {
        if (cmd.args.size() != 1)
          throw SimError(Errc::syntax_error, "script line " + std::to_string(cmd.line_no) +
                                                 ": fail wants one node argument");
        state.world.inject_failure(cmd.args[0], cmd.tick);
      } else if (cmd.verb == "recover") {
        if (cmd.args.size() != 1)
          throw SimError(Errc::syntax_error, "script line " + std::to_string(cmd.line_no) +
                                                 ": recover wants one node argument");
        state.world.inject_recovery(cmd.args[0], cmd.tick);
      }
    }

    int exit_code = kExitOk;
    for (const ScriptCommand& cmd : script) {
      state.step_to(cmd.tick);
      if (cmd.verb == "fail" || cmd.verb == "recover") continue;

      if (cmd.verb == "place") {
        if (state.plan)
          throw SimError(Errc::syntax_error,
                         "script line " + std::to_string(cmd.line_no) + ": plan already placed");
        try {
          state.plan = place_application(state.descriptor, state.hierarchy, state.inventory,
                                         state.host_ledgers, state.addresses);
          state.reserve_edge_reservations();
          state.log("place", "app=" + state.descriptor.app_id +
                                 " units=" + std::to_string(state.plan->assignments.size()));
        } catch (const PlacementError& e) {
          state.log("place_failed", "unit=" + e.unit_id() +
                                        " reason=" + std::string(errc_name(e.reason())));
          diag << "placement failed: " << e.what() << "\n";
          exit_code = kExitPlacementFailed;
          break;
        }
      } else if (cmd.verb == "measure") {
        std::size_t emitted = state.measure_deployment();
        state.log("measured", "samples=" + std::to_string(emitted));
      } else if (cmd.verb == "offload") {
        if (cmd.args.size() != 2)
          throw SimError(Errc::syntax_error, "script line " + std::to_string(cmd.line_no) +
                                                 ": offload wants <site> <threshold>");
        if (!state.plan)
          throw SimError(Errc::syntax_error,
                         "script line " + std::to_string(cmd.line_no) + ": nothing placed");
        try {
          std::vector<Migration> migrations =
              offload(cmd.args[0], Rational::parse(cmd.args[1]), *state.plan, state.descriptor,
                      state.inventory, state.host_ledgers, state.addresses);
          state.reserve_edge_reservations();
          std::string detail = "site=" + cmd.args[0];
          for (const Migration& m : migrations)
            detail += " " + m.unit_id + ":" + m.from.to_string() + ">" + m.to.to_string();
          state.log("offload", detail);
        } catch (const SimError& e) {
          if (e.code() != Errc::offload_impossible) throw;
          state.log("offload_impossible", "site=" + cmd.args[0]);
        }
      } else if (cmd.verb == "snapshot") {
        if (!state.plan)
          throw SimError(Errc::syntax_error,
                         "script line " + std::to_string(cmd.line_no) + ": nothing placed");
        Snapshot snap =
            snapshot(*state.plan, state.descriptor, state.registry, state.world.tick());
        state.last_snapshot_id = snap.snapshot_id;
        state.log("snapshot", "id=" + snap.snapshot_id);
        state.snapshots.emplace(snap.snapshot_id, std::move(snap));
      } else if (cmd.verb == "restore") {
        std::string id = cmd.args.empty() ? state.last_snapshot_id : cmd.args[0];
        auto snap = state.snapshots.find(id);
        if (snap == state.snapshots.end())
          throw SimError(Errc::syntax_error, "script line " + std::to_string(cmd.line_no) +
                                                 ": unknown snapshot '" + id + "'");
        try {
          state.plan = restore(snap->second, state.hierarchy, state.inventory,
                               state.host_ledgers, state.addresses);
          state.reserve_edge_reservations();
          state.log("restore", "id=" + id);
        } catch (const PlacementError& e) {
          state.log("restore_failed", "unit=" + e.unit_id() +
                                          " reason=" + std::string(errc_name(e.reason())));
        }
      }
    }

    std::string plan_text;
    if (state.plan) plan_text = state.plan->serialize();
    write_output(out_dir, "plan.txt", plan_text);
    std::string trace_text;
    for (const std::string& line : state.trace) trace_text += line + "\n";
    write_output(out_dir, "trace.txt", trace_text);
    write_output(out_dir, "rollups.txt", state.samples.empty() ? "" : render_rollups(state));
    write_output(out_dir, "slc.txt", render_slc(state));
    return exit_code;
  } catch (const SimError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_tables(const std::string& samples_path, std::ostream& out, std::ostream& diag) {
  std::optional<std::string> text = read_file(samples_path);
  if (!text) {
    diag << "error: cannot read samples file '" << samples_path << "'\n";
    return kExitInputError;
  }
  try {
    std::vector<MeasurementSample> samples = parse_samples(*text);
    out << render_tables(samples, CalibrationParams{});
    return kExitOk;
  } catch (const SimError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_scale_test(std::uint64_t n_agents, std::uint64_t n_units, std::ostream& out,
                   std::ostream& diag) {
  if (n_agents < 1 || n_units < 1) {
    diag << "error: scale-test wants agents >= 1 and units >= 1\n";
    return kExitInputError;
  }
  auto t0 = std::chrono::steady_clock::now();

  HierarchyConfig config;
  config.regions.push_back("region0");
  Hierarchy h = Hierarchy::build(config);
  for (std::uint64_t i = 0; i < n_agents; ++i) {
    AgentRecord agent;
    agent.address = AgentAddress{"", "agent" + std::to_string(i), std::nullopt};
    agent.host_ref = "host0";
    h.discover(std::move(agent));
  }

  AllocationLedger addresses;
  addresses.allocate_site("site0");
  addresses.allocate_host_prefix("site0", "host0");
  CapacityLedger ledger("host0", Rational(0), Rational(0));
  Ipv6Prefix last{};
  for (std::uint64_t i = 1; i <= n_units; ++i) {
    const std::string unit_id = "unit" + std::to_string(i);
    last = addresses.allocate_unit_address("host0", unit_id);
    CirReservation r;
    r.reservation_id = unit_id;
    r.holder = unit_id;
    if (ledger.admit(r)) {
      diag << "error: zero-cost reservation rejected\n";
      return kExitInputError;
    }
  }

  // Post-hoc verification: all unit addresses unique and inside the host /64.
  const Ipv6Prefix host = *addresses.host_prefix("host0");
  std::set<Ipv6Prefix> unique;
  bool contained = true;
  for (const auto& [unit_id, address] : addresses.units()) {
    unique.insert(address);
    if (!host.contains(address)) contained = false;
  }
  bool verified = contained && unique.size() == addresses.units().size() &&
                  addresses.units().size() == n_units;

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  out << "agents\t" << h.agent_count() << "\n";
  out << "units\t" << addresses.units().size() << "\n";
  out << "last_address\t" << last.to_string() << "\n";
  out << "reservations\t" << ledger.children().size() << "\n";
  out << "verified\t" << (verified ? "true" : "false") << "\n";
  out << "elapsed_ms\t" << elapsed << "\n";
  return verified ? kExitOk : kExitInputError;
}

}  // namespace edgeplane
