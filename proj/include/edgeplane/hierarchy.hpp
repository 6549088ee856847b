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

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edgeplane/error.hpp"

namespace edgeplane {

/// Path-style identity of an agent (optionally a functional unit it hosts).
/// Totally ordered lexicographically by (region, agent, unit).
struct AgentAddress {
  std::string region_id;
  std::string agent_id;
  std::optional<std::string> unit_id;

  std::string to_string() const;  // "region/agent" or "region/agent/unit"
  auto operator<=>(const AgentAddress&) const = default;
};

enum class PolicyLevel { agent, regional, global };
enum class Verdict { allow, deny };

/// One first-match communication rule. Fields are literal ids or "*".
/// A level's default verdict (applied when none of its rules match) is the
/// `default_verdict` of the first rule listed for that level; levels without
/// rules default to allow.
struct CommPolicy {
  PolicyLevel level = PolicyLevel::global;
  std::string src_region = "*";
  std::string src_agent = "*";
  std::string dst_region = "*";
  std::string dst_agent = "*";
  Verdict verdict = Verdict::allow;
  Verdict default_verdict = Verdict::allow;
};

struct AgentRecord {
  AgentAddress address;
  std::string host_ref;
  std::map<std::string, std::string> capabilities;
  std::set<std::string> units;
};

struct RegionNode {
  std::string region_id;
  std::map<std::string, AgentRecord> agents;
};

struct HierarchyConfig {
  struct AgentConfig {
    std::string region_id;
    std::string agent_id;
    std::string host_ref;
    std::map<std::string, std::string> capabilities;
  };

  std::string global_id = "global";
  std::vector<std::string> regions;
  std::vector<AgentConfig> agents;
  std::vector<CommPolicy> policies;
  /// When set, every agent's host_ref must name a member (DanglingHostRef
  /// otherwise). Unset disables host validation.
  std::optional<std::set<std::string>> known_hosts;
};

/// Evaluates the policy set for a (src, dst) pair over the levels the route
/// between them traverses: first matching rule wins within a level, the
/// overall verdict is allow only if every traversed level allows.
Verdict check_comm_policy(const AgentAddress& src, const AgentAddress& dst,
                          const std::vector<CommPolicy>& policies);

/// The three-tier control plane: one global node, regions, agents.
class Hierarchy {
 public:
  /// Pure function of the config; throws DuplicateId / DanglingHostRef.
  static Hierarchy build(const HierarchyConfig& config);

  /// Attaches an agent. An empty region_id picks the region with the fewest
  /// agents (ties: lexicographically smallest region_id). Returns the final
  /// address. Requires exclusive access.
  AgentAddress discover(AgentRecord agent);

  /// Hop labels from src to dst through the lowest common control node:
  /// [a], [a, r, b], or [a, r1, global, r2, b]. Throws UnknownAddress and
  /// PolicyDenied.
  std::vector<std::string> route(const AgentAddress& src, const AgentAddress& dst) const;

  const std::string& global_id() const { return global_id_; }
  const std::map<std::string, RegionNode>& regions() const { return regions_; }
  const std::vector<CommPolicy>& policies() const { return policies_; }

  const AgentRecord* find_agent(const AgentAddress& address) const;
  bool has_region(const std::string& region_id) const { return regions_.contains(region_id); }
  std::size_t agent_count() const;

  /// Deterministic text dump (regions and agents in sorted order).
  std::string serialize() const;

 private:
  std::string global_id_;
  std::map<std::string, RegionNode> regions_;
  std::vector<CommPolicy> policies_;
};

}  // namespace edgeplane
