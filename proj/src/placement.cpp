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

#include "edgeplane/placement.hpp"

#include <algorithm>
#include <optional>

namespace edgeplane {

namespace {

bool predicate_matches(const std::string& pattern, const std::string& value) {
  return pattern == "*" || pattern == value;
}

bool satisfies_predicates(const FunctionalUnit& unit, const AgentEntry& entry) {
  for (const auto& [cap, pattern] : unit.predicates) {
    auto it = entry.capabilities.find(cap);
    if (it == entry.capabilities.end() || !predicate_matches(pattern, it->second))
      return false;
  }
  return true;
}

Rational residual_score(const FunctionalUnit& unit, const CapacityLedger& ledger) {
  Rational score(0);
  if (ledger.cpu_capacity() > Rational(0))
    score += (ledger.cpu_headroom() - unit.request.cpu_scale) / ledger.cpu_capacity();
  if (ledger.bandwidth_capacity() > Rational(0))
    score +=
        (ledger.bandwidth_headroom() - unit.request.bandwidth_kbps) / ledger.bandwidth_capacity();
  return score;
}

std::string reservation_instance_id(const std::string& app_id, const std::string& unit_id) {
  return app_id + ":" + unit_id;
}

/// Commits one unit onto an agent: reservation on the host ledger plus a
/// /128 from the host's /64.
UnitAssignment commit_unit(const FunctionalUnit& unit, const std::string& app_id,
                           const AgentEntry& entry, LedgerMap& ledgers,
                           AllocationLedger& addresses) {
  const std::string rid = reservation_instance_id(app_id, unit.unit_id);
  CirReservation r;
  r.reservation_id = rid;
  r.bandwidth_kbps = unit.request.bandwidth_kbps;
  r.latency_budget_ms = unit.request.latency_budget_ms;
  r.cpu_scale = unit.request.cpu_scale;
  r.holder = entry.address.to_string();
  if (auto rejection = ledgers.at(entry.host_ref).admit(r))
    throw PlacementError(unit.unit_id, rejection->dimension,
                         "unit '" + unit.unit_id + "' rejected on '" + entry.host_ref +
                             "': " + std::string(errc_name(rejection->dimension)));
  Ipv6Prefix address;
  try {
    address = addresses.allocate_unit_address(entry.host_ref, rid);
  } catch (const SimError&) {
    ledgers.at(entry.host_ref).release(rid);
    throw PlacementError(unit.unit_id, Errc::address_exhausted,
                         "no /128 available on host '" + entry.host_ref + "' for unit '" +
                             unit.unit_id + "'");
  }
  UnitAssignment a;
  a.agent = entry.address;
  a.address = address;
  a.reservation_ids = {rid};
  a.cpu_scale = unit.request.cpu_scale;
  a.bandwidth_kbps = unit.request.bandwidth_kbps;
  return a;
}

void release_unit(const std::string& app_id, const std::string& unit_id,
                  const UnitAssignment& assignment, const Inventory& inv, LedgerMap& ledgers,
                  AllocationLedger& addresses) {
  const AgentEntry& entry = inv.agents.at(assignment.agent);
  auto ledger = ledgers.find(entry.host_ref);
  for (const auto& rid : assignment.reservation_ids)
    if (ledger != ledgers.end() && ledger->second.find(rid)) ledger->second.release(rid);
  const std::string rid = reservation_instance_id(app_id, unit_id);
  if (addresses.unit_address(rid)) addresses.release(rid);
}

/// Re-places one unit wherever it best fits; nullopt when nothing is
/// eligible.
std::optional<UnitAssignment> replace_unit(const FunctionalUnit& unit, const std::string& app_id,
                                           const Inventory& inv, LedgerMap& ledgers,
                                           AllocationLedger& addresses) {
  std::vector<AgentAddress> candidates = filter_candidates(unit, inv, ledgers);
  if (candidates.empty()) return std::nullopt;
  AgentAddress target = best_fit(unit, candidates, inv, ledgers);
  return commit_unit(unit, app_id, inv.agents.at(target), ledgers, addresses);
}

}  // namespace

Inventory Inventory::from_hierarchy(const Hierarchy& h) {
  Inventory inv;
  for (const auto& [region_id, region] : h.regions()) {
    for (const auto& [agent_id, agent] : region.agents) {
      AgentEntry entry;
      entry.address = agent.address;
      entry.host_ref = agent.host_ref;
      entry.capabilities = agent.capabilities;
      inv.agents.emplace(entry.address, std::move(entry));
    }
  }
  return inv;
}

void Inventory::set_host_alive(const std::string& host_ref, bool alive) {
  for (auto& [address, entry] : agents)
    if (entry.host_ref == host_ref) entry.alive = alive;
}

std::vector<AgentAddress> filter_candidates(const FunctionalUnit& unit, const Inventory& inv,
                                            const LedgerMap& ledgers) {
  std::vector<AgentAddress> out;
  for (const auto& [address, entry] : inv.agents) {
    if (!entry.alive) continue;
    if (!satisfies_predicates(unit, entry)) continue;
    auto ledger = ledgers.find(entry.host_ref);
    if (ledger == ledgers.end()) continue;
    if (ledger->second.bandwidth_headroom() < unit.request.bandwidth_kbps) continue;
    if (ledger->second.cpu_headroom() < unit.request.cpu_scale) continue;
    out.push_back(address);
  }
  return out;
}

AgentAddress best_fit(const FunctionalUnit& unit, const std::vector<AgentAddress>& candidates,
                      const Inventory& inv, const LedgerMap& ledgers) {
  if (candidates.empty())
    throw SimError(Errc::no_candidates, "no candidate agents for unit '" + unit.unit_id + "'");
  const AgentAddress* best = nullptr;
  Rational best_score(0);
  for (const AgentAddress& address : candidates) {
    Rational score = residual_score(unit, ledgers.at(inv.agents.at(address).host_ref));
    if (!best || score < best_score || (score == best_score && address < *best)) {
      best = &address;
      best_score = score;
    }
  }
  return *best;
}

PlacementPlan place_application(const AppDescriptor& d, const Hierarchy& h, const Inventory& inv,
                                LedgerMap& ledgers, AllocationLedger& addresses) {
  // Whole-plan rollback: mutate the live ledgers, restore the saved values
  // on any failure.
  const LedgerMap ledgers_backup = ledgers;
  const AllocationLedger addresses_backup = addresses;

  PlacementPlan plan;
  plan.app_id = d.app_id;
  try {
    for (const std::string& unit_id : d.topological_unit_order()) {
      const FunctionalUnit& unit = *d.find_unit(unit_id);

      // Each region resolves its own best fit; the global tier takes the
      // region whose winner leaves the least residual (ties: smallest
      // address, i.e. region-major order).
      std::optional<AgentAddress> chosen;
      Rational chosen_score(0);
      std::vector<AgentAddress> candidates = filter_candidates(unit, inv, ledgers);
      for (const auto& [region_id, region] : h.regions()) {
        std::vector<AgentAddress> local;
        for (const AgentAddress& a : candidates)
          if (a.region_id == region_id) local.push_back(a);
        if (local.empty()) continue;
        AgentAddress regional_best = best_fit(unit, local, inv, ledgers);
        Rational score =
            residual_score(unit, ledgers.at(inv.agents.at(regional_best).host_ref));
        if (!chosen || score < chosen_score ||
            (score == chosen_score && regional_best < *chosen)) {
          chosen = regional_best;
          chosen_score = score;
        }
      }
      if (!chosen)
        throw PlacementError(unit_id, Errc::no_candidates,
                             "no candidate agents for unit '" + unit_id + "'");

      plan.assignments.emplace(
          unit_id, commit_unit(unit, d.app_id, inv.agents.at(*chosen), ledgers, addresses));
      plan.state[unit_id] = UnitState::placed;
    }
  } catch (const PlacementError&) {
    ledgers = ledgers_backup;
    addresses = addresses_backup;
    throw;
  }
  return plan;
}

ReassignReport reassign_on_failure(PlacementPlan& plan, const std::string& failed_host,
                                   const AppDescriptor& d, const Inventory& inv,
                                   LedgerMap& ledgers, AllocationLedger& addresses) {
  ReassignReport report;
  for (const FunctionalUnit& unit : d.units) {
    auto it = plan.assignments.find(unit.unit_id);
    if (it == plan.assignments.end()) continue;
    if (inv.agents.at(it->second.agent).host_ref != failed_host) continue;

    release_unit(plan.app_id, unit.unit_id, it->second, inv, ledgers, addresses);
    if (auto assignment = replace_unit(unit, plan.app_id, inv, ledgers, addresses)) {
      it->second = *assignment;
      report.moved.push_back(unit.unit_id);
    } else {
      plan.assignments.erase(it);
      plan.state[unit.unit_id] = UnitState::failed;
      report.failed.push_back(unit.unit_id);
    }
  }
  return report;
}

std::vector<Migration> offload(const std::string& site_id, const Rational& pressure_threshold,
                               PlacementPlan& plan, const AppDescriptor& d, const Inventory& inv,
                               LedgerMap& ledgers, AllocationLedger& addresses) {
  auto host_on_site = [&](const std::string& host_ref) {
    auto it = inv.host_site.find(host_ref);
    return it != inv.host_site.end() && it->second == site_id;
  };
  auto site_utilization = [&]() {
    Rational used(0);
    Rational capacity(0);
    for (const auto& [host_ref, ledger] : ledgers) {
      if (!host_on_site(host_ref)) continue;
      used += ledger.committed_cpu();
      capacity += ledger.cpu_capacity();
    }
    return capacity > Rational(0) ? used / capacity : Rational(0);
  };

  std::vector<Migration> migrations;
  while (site_utilization() > pressure_threshold) {
    // Largest movable cpu request first; ties by unit id.
    const FunctionalUnit* victim = nullptr;
    for (const FunctionalUnit& unit : d.units) {
      if (!unit.location_independent) continue;
      auto it = plan.assignments.find(unit.unit_id);
      if (it == plan.assignments.end()) continue;
      if (!host_on_site(inv.agents.at(it->second.agent).host_ref)) continue;
      if (!victim || unit.request.cpu_scale > victim->request.cpu_scale ||
          (unit.request.cpu_scale == victim->request.cpu_scale &&
           unit.unit_id < victim->unit_id))
        victim = &unit;
    }
    if (!victim)
      throw SimError(Errc::offload_impossible,
                     "site '" + site_id + "' over threshold with no movable units");

    std::vector<AgentAddress> external;
    for (const AgentAddress& a : filter_candidates(*victim, inv, ledgers))
      if (!host_on_site(inv.agents.at(a).host_ref)) external.push_back(a);
    if (external.empty())
      throw SimError(Errc::offload_impossible,
                     "no external capacity for unit '" + victim->unit_id + "'");
    std::vector<AgentAddress> cloud;
    for (const AgentAddress& a : external) {
      const auto& caps = inv.agents.at(a).capabilities;
      auto tier = caps.find("tier");
      if (tier != caps.end() && tier->second == "cloud") cloud.push_back(a);
    }
    AgentAddress target =
        best_fit(*victim, cloud.empty() ? external : cloud, inv, ledgers);

    auto it = plan.assignments.find(victim->unit_id);
    AgentAddress from = it->second.agent;
    release_unit(plan.app_id, victim->unit_id, it->second, inv, ledgers, addresses);
    it->second = commit_unit(*victim, plan.app_id, inv.agents.at(target), ledgers, addresses);
    migrations.push_back(Migration{victim->unit_id, from, target});
  }
  return migrations;
}

PlacementPlan restore(const Snapshot& snap, const Hierarchy& h, const Inventory& inv,
                      LedgerMap& ledgers, AllocationLedger& addresses) {
  (void)h;
  const LedgerMap ledgers_backup = ledgers;
  const AllocationLedger addresses_backup = addresses;
  PlacementPlan plan = snap.plan;
  try {
    for (const FunctionalUnit& unit : snap.descriptor.units) {
      auto it = plan.assignments.find(unit.unit_id);
      if (it == plan.assignments.end()) continue;
      const AgentEntry& original = inv.agents.at(it->second.agent);
      if (original.alive) continue;  // preferential re-placement: stay put

      release_unit(plan.app_id, unit.unit_id, it->second, inv, ledgers, addresses);
      if (auto assignment = replace_unit(unit, plan.app_id, inv, ledgers, addresses)) {
        it->second = *assignment;
        plan.state[unit.unit_id] = UnitState::placed;
      } else {
        throw PlacementError(unit.unit_id, Errc::no_candidates,
                             "restore cannot re-place unit '" + unit.unit_id + "'");
      }
    }
  } catch (const PlacementError&) {
    ledgers = ledgers_backup;
    addresses = addresses_backup;
    throw;
  }
  return plan;
}

}  // namespace edgeplane
