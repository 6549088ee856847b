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

#include "edgeplane/simnet.hpp"

#include <algorithm>
#include <sstream>

namespace edgeplane {

namespace {

[[noreturn]] void scenario_fail(Errc code, int line_no, const std::string& what) {
  throw SimError(code, "scenario line " + std::to_string(line_no) + ": " + what);
}

struct Record {
  std::string type;
  std::vector<std::pair<std::string, std::string>> kv;
  int line_no = 0;

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : kv)
      if (k == key) return &v;
    return nullptr;
  }
  std::string require(const std::string& key) const {
    const std::string* v = find(key);
    if (!v) scenario_fail(Errc::syntax_error, line_no, "missing key '" + key + "'");
    return *v;
  }
  Rational rational(const std::string& key, const Rational& fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    try {
      return Rational::parse(*v);
    } catch (const std::exception& e) {
      scenario_fail(Errc::syntax_error, line_no, std::string(e.what()));
    }
  }
  std::uint64_t integer(const std::string& key) const {
    const std::string& v = require(key);
    std::uint64_t out = 0;
    for (char c : v) {
      if (c < '0' || c > '9')
        scenario_fail(Errc::syntax_error, line_no, "'" + key + "' wants an integer");
      out = out * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return out;
  }
};

NodeRole parse_role(const std::string& text, int line_no) {
  if (text == "router") return NodeRole::router;
  if (text == "compute") return NodeRole::compute;
  if (text == "storage") return NodeRole::storage;
  if (text == "device") return NodeRole::device;
  if (text == "gateway") return NodeRole::gateway;
  scenario_fail(Errc::syntax_error, line_no, "unknown role '" + text + "'");
}

EventKind parse_event_kind(const std::string& text, int line_no) {
  if (text == "host_fail") return EventKind::host_fail;
  if (text == "host_recover") return EventKind::host_recover;
  if (text == "link_fail") return EventKind::link_fail;
  if (text == "traffic") return EventKind::traffic;
  if (text == "measure") return EventKind::measure;
  scenario_fail(Errc::syntax_error, line_no, "unknown event kind '" + text + "'");
}

Verdict parse_verdict(const std::string& text, int line_no) {
  if (text == "allow") return Verdict::allow;
  if (text == "deny") return Verdict::deny;
  scenario_fail(Errc::syntax_error, line_no, "verdict must be allow|deny");
}

PolicyLevel parse_level(const std::string& text, int line_no) {
  if (text == "agent") return PolicyLevel::agent;
  if (text == "regional") return PolicyLevel::regional;
  if (text == "global") return PolicyLevel::global;
  scenario_fail(Errc::syntax_error, line_no, "level must be agent|regional|global");
}

// "region/agent" pattern pair; a bare token applies to the region.
std::pair<std::string, std::string> parse_addr_pattern(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return {text, "*"};
  return {text.substr(0, slash), text.substr(slash + 1)};
}

// mult(nominal:f1[:f2...],...)
NoiseModel parse_noise(const std::string& text, int line_no) {
  NoiseModel model;
  if (text == "none") return model;
  if (!text.starts_with("mult(") || !text.ends_with(")"))
    scenario_fail(Errc::syntax_error, line_no, "noise must be none or mult(...)");
  std::string body = text.substr(5, text.size() - 6);
  std::istringstream in(body);
  std::string entry;
  while (std::getline(in, entry, ',')) {
    std::vector<std::string> parts;
    std::istringstream ein(entry);
    std::string p;
    while (std::getline(ein, p, ':')) parts.push_back(p);
    if (parts.size() < 2)
      scenario_fail(Errc::syntax_error, line_no, "noise entry wants nominal:factor");
    try {
      Rational nominal = Rational::parse(parts[0]);
      std::vector<Rational> fs;
      for (std::size_t i = 1; i < parts.size(); ++i) fs.push_back(Rational::parse(parts[i]));
      model.factors.emplace(nominal, std::move(fs));
    } catch (const std::exception& e) {
      scenario_fail(Errc::syntax_error, line_no, std::string(e.what()));
    }
  }
  return model;
}

}  // namespace

std::vector<Rational> NoiseModel::factors_for(const Rational& nominal) const {
  auto it = factors.find(nominal);
  if (it == factors.end()) return {Rational(1)};
  return it->second;
}

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::host_fail: return "host_fail";
    case EventKind::host_recover: return "host_recover";
    case EventKind::link_fail: return "link_fail";
    case EventKind::traffic: return "traffic";
    case EventKind::measure: return "measure";
  }
  return "?";
}

World World::load_scenario(std::string_view text) {
  World w;
  std::set<std::string> site_ids;
  std::set<std::string> region_ids;
  std::set<std::string> agent_ids;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream lin(raw);
    std::string type;
    if (!(lin >> type)) continue;
    Record rec;
    rec.type = type;
    rec.line_no = line_no;
    std::string tok;
    while (lin >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        scenario_fail(Errc::syntax_error, line_no, "expected key=value, got '" + tok + "'");
      rec.kv.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }

    if (type == "world") {
      if (rec.find("seed")) w.seed_ = rec.integer("seed");
      w.overhead_ = rec.rational("overhead", w.overhead_);
      if (const std::string* v = rec.find("pool")) w.pool_ = *v;
      if (const std::string* v = rec.find("global")) w.hierarchy_config_.global_id = *v;
    } else if (type == "site") {
      std::string id = rec.require("id");
      if (!site_ids.insert(id).second)
        scenario_fail(Errc::duplicate_node_id, line_no, "duplicate site '" + id + "'");
      w.sites_.push_back(SiteSpec{id});
    } else if (type == "host") {
      HostSpec h;
      h.host_id = rec.require("id");
      h.site_id = rec.require("site");
      if (!site_ids.contains(h.site_id))
        scenario_fail(Errc::dangling_endpoint, line_no,
                      "host '" + h.host_id + "' names unknown site '" + h.site_id + "'");
      if (w.hosts_.contains(h.host_id))
        scenario_fail(Errc::duplicate_node_id, line_no, "duplicate host '" + h.host_id + "'");
      h.role = parse_role(rec.find("role") ? *rec.find("role") : "compute", line_no);
      h.cpu_capacity_cores = rec.rational("cpu_cores", Rational(0));
      h.cpu_reference_score = rec.rational("cpu_score", Rational(0));
      h.bandwidth_capacity_kbps = rec.rational("bw_kbps", Rational(0));
      if (h.role == NodeRole::compute &&
          (h.cpu_capacity_cores <= Rational(0) || h.bandwidth_capacity_kbps <= Rational(0)))
        scenario_fail(Errc::syntax_error, line_no,
                      "compute host '" + h.host_id + "' needs cpu_cores and bw_kbps > 0");
      w.host_order_.push_back(h.host_id);
      w.hosts_.emplace(h.host_id, std::move(h));
    } else if (type == "link") {
      LinkSpec l;
      l.link_id = rec.require("id");
      if (w.links_.contains(l.link_id))
        scenario_fail(Errc::duplicate_node_id, line_no, "duplicate link '" + l.link_id + "'");
      l.endpoint_a = rec.require("a");
      l.endpoint_b = rec.require("b");
      for (const std::string* ep : {&l.endpoint_a, &l.endpoint_b})
        if (!w.hosts_.contains(*ep))
          scenario_fail(Errc::dangling_endpoint, line_no,
                        "link '" + l.link_id + "' references unknown node '" + *ep + "'");
      l.capacity_kbps = rec.rational("capacity_kbps", Rational(0));
      if (l.capacity_kbps <= Rational(0))
        scenario_fail(Errc::syntax_error, line_no, "link capacity must be positive");
      l.base_latency_ms = rec.rational("base_latency_ms", Rational(0));
      l.induced_latency_ms = rec.rational("induced_latency_ms", Rational(0));
      if (l.base_latency_ms < Rational(0) || l.induced_latency_ms < Rational(0))
        scenario_fail(Errc::syntax_error, line_no, "latencies must be >= 0");
      if (const std::string* v = rec.find("noise")) l.noise = parse_noise(*v, line_no);
      w.link_ledgers_.emplace(l.link_id,
                              CapacityLedger(l.link_id, l.capacity_kbps, Rational(0)));
      w.links_.emplace(l.link_id, std::move(l));
    } else if (type == "region") {
      std::string id = rec.require("id");
      if (!region_ids.insert(id).second)
        scenario_fail(Errc::duplicate_node_id, line_no, "duplicate region '" + id + "'");
      w.hierarchy_config_.regions.push_back(id);
    } else if (type == "agent") {
      HierarchyConfig::AgentConfig a;
      a.agent_id = rec.require("id");
      if (!agent_ids.insert(a.agent_id).second)
        scenario_fail(Errc::duplicate_node_id, line_no, "duplicate agent '" + a.agent_id + "'");
      a.region_id = rec.require("region");
      a.host_ref = rec.require("host");
      for (const auto& [k, v] : rec.kv)
        if (k.starts_with("cap.")) a.capabilities[k.substr(4)] = v;
      w.hierarchy_config_.agents.push_back(std::move(a));
    } else if (type == "policy") {
      CommPolicy p;
      p.level = parse_level(rec.require("level"), line_no);
      std::tie(p.src_region, p.src_agent) = parse_addr_pattern(rec.require("src"));
      std::tie(p.dst_region, p.dst_agent) = parse_addr_pattern(rec.require("dst"));
      p.verdict = parse_verdict(rec.require("verdict"), line_no);
      if (const std::string* v = rec.find("default"))
        p.default_verdict = parse_verdict(*v, line_no);
      w.hierarchy_config_.policies.push_back(p);
    } else if (type == "event") {
      std::uint64_t at = rec.integer("at");
      if (at < 1) scenario_fail(Errc::past_tick, line_no, "event ticks start at 1");
      EventKind kind = parse_event_kind(rec.require("kind"), line_no);
      std::string payload;
      for (const auto& [k, v] : rec.kv) {
        if (k == "at" || k == "kind") continue;
        if (!payload.empty()) payload += ' ';
        payload += k + "=" + v;
      }
      w.schedule(kind, at, std::move(payload));
    } else {
      scenario_fail(Errc::syntax_error, line_no, "unknown record type '" + type + "'");
    }
  }

  w.hierarchy_config_.known_hosts.emplace();
  for (const auto& id : w.host_order_) w.hierarchy_config_.known_hosts->insert(id);
  return w;
}

void World::schedule(EventKind kind, std::uint64_t at_tick, std::string payload) {
  if (at_tick <= tick_)
    throw SimError(Errc::past_tick, "cannot schedule an event at or before the current tick");
  SimEvent e;
  e.at_tick = at_tick;
  e.kind = kind;
  e.payload = std::move(payload);
  e.seq = next_seq_++;
  queue_.emplace(std::make_pair(at_tick, e.seq), std::move(e));
}

void World::inject_failure(const std::string& node_id, std::uint64_t at_tick) {
  if (!hosts_.contains(node_id))
    throw SimError(Errc::unknown_node, "unknown node '" + node_id + "'");
  if (at_tick <= tick_)
    throw SimError(Errc::past_tick, "failure tick must be after the current tick");
  schedule(EventKind::host_fail, at_tick, "node=" + node_id);
}

void World::inject_recovery(const std::string& node_id, std::uint64_t at_tick) {
  if (!hosts_.contains(node_id))
    throw SimError(Errc::unknown_node, "unknown node '" + node_id + "'");
  if (at_tick <= tick_)
    throw SimError(Errc::past_tick, "recovery tick must be after the current tick");
  schedule(EventKind::host_recover, at_tick, "node=" + node_id);
}

void World::apply(const SimEvent& e) {
  auto node_of = [&]() {
    std::istringstream in(e.payload);
    std::string tok;
    while (in >> tok)
      if (tok.starts_with("node=")) return tok.substr(5);
    return std::string();
  };
  switch (e.kind) {
    case EventKind::host_fail:
      dead_hosts_.insert(node_of());
      break;
    case EventKind::host_recover:
      dead_hosts_.erase(node_of());
      break;
    case EventKind::link_fail: {
      std::istringstream in(e.payload);
      std::string tok;
      while (in >> tok)
        if (tok.starts_with("link=")) dead_links_.insert(tok.substr(5));
      break;
    }
    case EventKind::traffic:
    case EventKind::measure:
      break;  // interpreted by the caller
  }
}

std::vector<SimEvent> World::step() {
  ++tick_;
  std::vector<SimEvent> fired;
  auto it = queue_.begin();
  while (it != queue_.end() && it->first.first <= tick_) {
    apply(it->second);
    fired.push_back(it->second);
    it = queue_.erase(it);
  }
  return fired;
}

bool World::link_alive(const std::string& link_id) const {
  auto it = links_.find(link_id);
  if (it == links_.end()) return false;
  if (dead_links_.contains(link_id)) return false;
  return host_alive(it->second.endpoint_a) && host_alive(it->second.endpoint_b);
}

namespace {

struct PathResult {
  std::vector<std::string> links;
  bool found = false;
};

}  // namespace

std::vector<std::string> World::path_links(const std::string& src_node,
                                           const std::string& dst_node) const {
  if (!hosts_.contains(src_node) || !hosts_.contains(dst_node))
    throw SimError(Errc::unknown_node, "unknown endpoint");
  if (!host_alive(src_node) || !host_alive(dst_node))
    throw SimError(Errc::unreachable, src_node + " or " + dst_node + " is down");
  if (src_node == dst_node) return {};

  // Adjacency over live links, in link-id order for determinism.
  std::map<std::string, std::vector<const LinkSpec*>> adjacency;
  for (const auto& [id, link] : links_) {
    if (!link_alive(id)) continue;
    adjacency[link.endpoint_a].push_back(&link);
    adjacency[link.endpoint_b].push_back(&link);
  }

  std::map<std::string, Rational> dist;
  std::map<std::string, const LinkSpec*> via;
  std::set<std::pair<Rational, std::string>> frontier;
  dist[src_node] = Rational(0);
  frontier.emplace(Rational(0), src_node);
  while (!frontier.empty()) {
    auto [d, node] = *frontier.begin();
    frontier.erase(frontier.begin());
    if (node == dst_node) break;
    for (const LinkSpec* link : adjacency[node]) {
      const std::string& next =
          link->endpoint_a == node ? link->endpoint_b : link->endpoint_a;
      Rational nd = d + link->base_latency_ms + link->induced_latency_ms;
      auto it = dist.find(next);
      if (it == dist.end() || nd < it->second) {
        if (it != dist.end()) frontier.erase({it->second, next});
        dist[next] = nd;
        via[next] = link;
        frontier.emplace(nd, next);
      }
    }
  }
  if (!dist.contains(dst_node))
    throw SimError(Errc::unreachable, "no live path " + src_node + " -> " + dst_node);

  std::vector<std::string> path;
  std::string node = dst_node;
  while (node != src_node) {
    const LinkSpec* link = via.at(node);
    path.push_back(link->link_id);
    node = link->endpoint_a == node ? link->endpoint_b : link->endpoint_a;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool World::reachable(const std::string& src_node, const std::string& dst_node) const {
  try {
    path_links(src_node, dst_node);
    return true;
  } catch (const SimError& e) {
    if (e.code() == Errc::unreachable) return false;
    throw;
  }
}

MeasurementSample World::measure_path(const std::string& src_node,
                                      const std::string& dst_node) const {
  std::vector<std::string> path = path_links(src_node, dst_node);
  Rational nominal_induced(0);
  Rational observed(0);
  for (const std::string& link_id : path) {
    const LinkSpec& link = links_.at(link_id);
    nominal_induced += link.induced_latency_ms;
    Rational factor = link.noise.factors_for(link.induced_latency_ms).front();
    observed += (link.base_latency_ms + link.induced_latency_ms) * factor;
  }
  MeasurementSample s;
  s.kind = MetricKind::latency;
  s.nominal = nominal_induced;
  s.observed = {observed};
  s.units = "ms";
  return s;
}

MeasurementSample World::measure_throughput(const std::string& link_id,
                                            const Rational& offered_kbps,
                                            const std::string& reservation_id) const {
  auto it = links_.find(link_id);
  if (it == links_.end())
    throw SimError(Errc::unknown_link, "unknown link '" + link_id + "'");
  if (!link_alive(link_id))
    throw SimError(Errc::unreachable, "link '" + link_id + "' is down");
  const LinkSpec& link = it->second;

  Rational effective = link.capacity_kbps;
  auto ledger = link_ledgers_.find(link_id);
  if (ledger != link_ledgers_.end() && !ledger->second.children().empty()) {
    const CirReservation* own =
        reservation_id.empty() ? nullptr : ledger->second.find(reservation_id);
    // A committed holder may burst into free headroom; everyone else shares
    // only the uncommitted remainder.
    effective = own ? own->bandwidth_kbps + ledger->second.bandwidth_headroom()
                    : ledger->second.bandwidth_headroom();
  }
  Rational delivered = offered_kbps < effective ? offered_kbps : effective;

  MeasurementSample s;
  s.kind = MetricKind::bandwidth;
  s.nominal = offered_kbps;
  for (const Rational& f : link.noise.factors_for(offered_kbps))
    s.observed.push_back(delivered * f);
  s.units = "kbps";
  return s;
}

}  // namespace edgeplane
