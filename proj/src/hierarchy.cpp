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

#include "edgeplane/hierarchy.hpp"

#include <algorithm>
#include <array>

namespace edgeplane {

namespace {

bool pattern_matches(const std::string& pattern, const std::string& value) {
  return pattern == "*" || pattern == value;
}

bool rule_matches(const CommPolicy& p, const AgentAddress& src, const AgentAddress& dst) {
  return pattern_matches(p.src_region, src.region_id) &&
         pattern_matches(p.src_agent, src.agent_id) &&
         pattern_matches(p.dst_region, dst.region_id) &&
         pattern_matches(p.dst_agent, dst.agent_id);
}

void validate_pattern(const std::string& pattern) {
  if (pattern.empty())
    throw SimError(Errc::syntax_error, "empty policy pattern");
}

}  // namespace

std::string AgentAddress::to_string() const {
  std::string s = region_id + "/" + agent_id;
  if (unit_id) s += "/" + *unit_id;
  return s;
}

Verdict check_comm_policy(const AgentAddress& src, const AgentAddress& dst,
                          const std::vector<CommPolicy>& policies) {
  std::array<PolicyLevel, 3> traversed{};
  std::size_t n_levels = 0;
  traversed[n_levels++] = PolicyLevel::agent;
  if (src.region_id != dst.region_id || src.agent_id != dst.agent_id)
    traversed[n_levels++] = PolicyLevel::regional;
  if (src.region_id != dst.region_id) traversed[n_levels++] = PolicyLevel::global;

  for (std::size_t i = 0; i < n_levels; ++i) {
    PolicyLevel level = traversed[i];
    std::optional<Verdict> verdict;
    std::optional<Verdict> level_default;
    for (const CommPolicy& p : policies) {
      if (p.level != level) continue;
      if (!level_default) level_default = p.default_verdict;
      if (rule_matches(p, src, dst)) {
        verdict = p.verdict;
        break;
      }
    }
    Verdict v = verdict.value_or(level_default.value_or(Verdict::allow));
    if (v == Verdict::deny) return Verdict::deny;
  }
  return Verdict::allow;
}

Hierarchy Hierarchy::build(const HierarchyConfig& config) {
  Hierarchy h;
  h.global_id_ = config.global_id;
  for (const auto& region_id : config.regions) {
    if (h.regions_.contains(region_id))
      throw SimError(Errc::duplicate_id, "duplicate region '" + region_id + "'");
    h.regions_.emplace(region_id, RegionNode{region_id, {}});
  }
  for (const auto& a : config.agents) {
    auto region = h.regions_.find(a.region_id);
    if (region == h.regions_.end())
      throw SimError(Errc::unknown_region,
                     "agent '" + a.agent_id + "' names unknown region '" + a.region_id + "'");
    if (region->second.agents.contains(a.agent_id))
      throw SimError(Errc::duplicate_id,
                     "duplicate agent '" + a.agent_id + "' in region '" + a.region_id + "'");
    if (config.known_hosts && !config.known_hosts->contains(a.host_ref))
      throw SimError(Errc::dangling_host_ref,
                     "agent '" + a.agent_id + "' references unknown host '" + a.host_ref + "'");
    AgentRecord rec;
    rec.address = AgentAddress{a.region_id, a.agent_id, std::nullopt};
    rec.host_ref = a.host_ref;
    rec.capabilities = a.capabilities;
    region->second.agents.emplace(a.agent_id, std::move(rec));
  }
  for (const CommPolicy& p : config.policies) {
    validate_pattern(p.src_region);
    validate_pattern(p.src_agent);
    validate_pattern(p.dst_region);
    validate_pattern(p.dst_agent);
  }
  h.policies_ = config.policies;
  return h;
}

AgentAddress Hierarchy::discover(AgentRecord agent) {
  std::string region_id = agent.address.region_id;
  if (region_id.empty()) {
    // Least-loaded attachment; ties go to the lexicographically smallest
    // region (map order already gives us that).
    const RegionNode* best = nullptr;
    for (const auto& [id, region] : regions_)
      if (!best || region.agents.size() < best->agents.size()) best = &region;
    if (!best) throw SimError(Errc::unknown_region, "no region to attach to");
    region_id = best->region_id;
  }
  auto region = regions_.find(region_id);
  if (region == regions_.end())
    throw SimError(Errc::unknown_region, "unknown region '" + region_id + "'");
  if (region->second.agents.contains(agent.address.agent_id))
    throw SimError(Errc::duplicate_id, "duplicate agent '" + agent.address.agent_id +
                                           "' in region '" + region_id + "'");
  agent.address.region_id = region_id;
  AgentAddress final_address = agent.address;
  region->second.agents.emplace(final_address.agent_id, std::move(agent));
  return final_address;
}

const AgentRecord* Hierarchy::find_agent(const AgentAddress& address) const {
  auto region = regions_.find(address.region_id);
  if (region == regions_.end()) return nullptr;
  auto agent = region->second.agents.find(address.agent_id);
  if (agent == region->second.agents.end()) return nullptr;
  return &agent->second;
}

std::size_t Hierarchy::agent_count() const {
  std::size_t n = 0;
  for (const auto& [id, region] : regions_) n += region.agents.size();
  return n;
}

std::vector<std::string> Hierarchy::route(const AgentAddress& src,
                                          const AgentAddress& dst) const {
  if (!find_agent(src))
    throw SimError(Errc::unknown_address, "unknown source " + src.to_string());
  if (!find_agent(dst))
    throw SimError(Errc::unknown_address, "unknown destination " + dst.to_string());
  if (check_comm_policy(src, dst, policies_) == Verdict::deny)
    throw SimError(Errc::policy_denied,
                   "policy denies " + src.to_string() + " -> " + dst.to_string());

  if (src.region_id == dst.region_id && src.agent_id == dst.agent_id)
    return {src.agent_id};
  if (src.region_id == dst.region_id)
    return {src.agent_id, src.region_id, dst.agent_id};
  return {src.agent_id, src.region_id, global_id_, dst.region_id, dst.agent_id};
}

std::string Hierarchy::serialize() const {
  std::string out = "global " + global_id_ + "\n";
  for (const auto& [region_id, region] : regions_) {
    out += "region " + region_id + "\n";
    for (const auto& [agent_id, agent] : region.agents) {
      out += "agent " + agent.address.to_string() + " host=" + agent.host_ref;
      for (const auto& [k, v] : agent.capabilities) out += " " + k + "=" + v;
      out += "\n";
    }
  }
  return out;
}

}  // namespace edgeplane
