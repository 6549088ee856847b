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

#include <map>
#include <string>
#include <vector>

#include "edgeplane/addressing.hpp"
#include "edgeplane/appdesc.hpp"
#include "edgeplane/hierarchy.hpp"
#include "edgeplane/plan.hpp"
#include "edgeplane/qos.hpp"

namespace edgeplane {

/// Placement view of one agent.
struct AgentEntry {
  AgentAddress address;
  std::string host_ref;
  std::map<std::string, std::string> capabilities;
  bool alive = true;
};

/// host_ref -> capacity ledger.
using LedgerMap = std::map<std::string, CapacityLedger>;

/// Per-agent placement inventory. Free capacity is always read from the
/// capacity ledgers, so it cannot drift from them.
struct Inventory {
  std::map<AgentAddress, AgentEntry> agents;
  std::map<std::string, std::string> host_site;  // host_ref -> site_id

  static Inventory from_hierarchy(const Hierarchy& h);

  void set_host_alive(const std::string& host_ref, bool alive);
};

class PlacementError : public SimError {
 public:
  PlacementError(std::string unit_id, Errc reason, std::string message)
      : SimError(Errc::placement_failed, std::move(message)),
        unit_id_(std::move(unit_id)),
        reason_(reason) {}

  const std::string& unit_id() const { return unit_id_; }
  Errc reason() const { return reason_; }

 private:
  std::string unit_id_;
  Errc reason_;
};

/// Agents that satisfy every predicate, are alive, and whose host has
/// headroom for the unit's request; ordered by address.
std::vector<AgentAddress> filter_candidates(const FunctionalUnit& unit, const Inventory& inv,
                                            const LedgerMap& ledgers);

/// The candidate minimizing the post-placement residual
/// (free_cpu - req_cpu)/host_cpu + (free_bw - req_bw)/host_bw, ties broken
/// by smallest address. Throws NoCandidates on an empty list.
AgentAddress best_fit(const FunctionalUnit& unit, const std::vector<AgentAddress>& candidates,
                      const Inventory& inv, const LedgerMap& ledgers);

/// Places all units in topological dataflow order. Each eligible region
/// picks its local best fit and the global tier takes the region whose best
/// candidate leaves the least residual. Reservations and /128 addresses are
/// committed per unit; any failure rolls the ledgers and address ledger back
/// to their state before the call and throws PlacementError.
PlacementPlan place_application(const AppDescriptor& d, const Hierarchy& h, const Inventory& inv,
                                LedgerMap& ledgers, AllocationLedger& addresses);

struct ReassignReport {
  std::vector<std::string> moved;
  std::vector<std::string> failed;
};

/// Re-places units stranded on a dead host (the inventory must already mark
/// it dead). Units with no eligible agent left are marked failed in the
/// plan; all reservations and addresses on the dead host are released.
ReassignReport reassign_on_failure(PlacementPlan& plan, const std::string& failed_host,
                                   const AppDescriptor& d, const Inventory& inv,
                                   LedgerMap& ledgers, AllocationLedger& addresses);

struct Migration {
  std::string unit_id;
  AgentAddress from;
  AgentAddress to;
};

/// While the site's cpu utilization exceeds the threshold (a fraction),
/// migrates the location-independent unit with the largest cpu request to
/// the best-fit agent outside the site, preferring agents tagged
/// tier=cloud. Throws OffloadImpossible when pressure cannot be relieved.
std::vector<Migration> offload(const std::string& site_id, const Rational& pressure_threshold,
                               PlacementPlan& plan, const AppDescriptor& d, const Inventory& inv,
                               LedgerMap& ledgers, AllocationLedger& addresses);

/// Redeploys a snapshot: units whose original agent is alive keep their
/// recorded assignment, the rest are re-placed via filter + best fit.
/// Throws PlacementError naming the first unit that cannot be placed.
PlacementPlan restore(const Snapshot& snap, const Hierarchy& h, const Inventory& inv,
                      LedgerMap& ledgers, AllocationLedger& addresses);

}  // namespace edgeplane
