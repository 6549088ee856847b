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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "edgeplane/hierarchy.hpp"
#include "edgeplane/qos.hpp"
#include "edgeplane/rational.hpp"

namespace edgeplane {

enum class NodeRole { router, compute, storage, device, gateway };

struct SiteSpec {
  std::string site_id;
};

struct HostSpec {
  std::string host_id;
  std::string site_id;
  NodeRole role = NodeRole::compute;
  Rational cpu_capacity_cores;
  Rational cpu_reference_score;
  Rational bandwidth_capacity_kbps;
};

/// Multiplicative measurement noise keyed by nominal magnitude, so recorded
/// observation columns can be injected as fixtures. Empty table or a missing
/// nominal means a factor of exactly 1.
struct NoiseModel {
  std::map<Rational, std::vector<Rational>> factors;

  std::vector<Rational> factors_for(const Rational& nominal) const;
};

struct LinkSpec {
  std::string link_id;
  std::string endpoint_a;
  std::string endpoint_b;
  Rational capacity_kbps;
  Rational base_latency_ms;
  Rational induced_latency_ms;
  NoiseModel noise;
};

enum class EventKind { host_fail, host_recover, link_fail, traffic, measure };

std::string_view event_kind_name(EventKind kind);

struct SimEvent {
  std::uint64_t at_tick = 0;
  EventKind kind = EventKind::measure;
  std::string payload;  // space-separated key=value tokens
  std::uint64_t seq = 0;
};

/// Deterministic tick-based model of the physical substrate: sites, hosts
/// (including routers), links, failures. One tick is one millisecond.
/// Identical (scenario, seed) yields an identical event trace.
class World {
 public:
  /// Sections: `world`, `site`, `host`, `link`, `region`, `agent`,
  /// `policy`, `event`; one record per line of `key=value` pairs. Errors
  /// carry line numbers.
  static World load_scenario(std::string_view text);

  /// Advances one tick and fires due events in (tick, insertion) order.
  std::vector<SimEvent> step();

  /// Queues a host failure; throws UnknownNode / PastTick.
  void inject_failure(const std::string& node_id, std::uint64_t at_tick);
  void inject_recovery(const std::string& node_id, std::uint64_t at_tick);

  void schedule(EventKind kind, std::uint64_t at_tick, std::string payload);

  /// Latency over the minimum-latency live path: sum of per-link
  /// (base + induced) x noise. Throws Unreachable.
  MeasurementSample measure_path(const std::string& src_node, const std::string& dst_node) const;

  /// Delivered rate on one link for an offered load. A reservation holder
  /// gets its committed rate plus any free headroom; unreserved probes get
  /// what the committed reservations leave over.
  MeasurementSample measure_throughput(const std::string& link_id, const Rational& offered_kbps,
                                       const std::string& reservation_id = "") const;

  /// Minimum-latency live path as link ids; empty for src == dst.
  std::vector<std::string> path_links(const std::string& src_node,
                                      const std::string& dst_node) const;

  bool reachable(const std::string& src_node, const std::string& dst_node) const;
  bool host_alive(const std::string& host_id) const { return !dead_hosts_.contains(host_id); }
  /// A link is up iff it has not failed and both endpoints are alive.
  bool link_alive(const std::string& link_id) const;

  std::uint64_t tick() const { return tick_; }
  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  const Rational& overhead() const { return overhead_; }
  const std::string& pool() const { return pool_; }

  const std::vector<SiteSpec>& sites() const { return sites_; }
  const std::vector<std::string>& host_order() const { return host_order_; }
  const std::map<std::string, HostSpec>& hosts() const { return hosts_; }
  const std::map<std::string, LinkSpec>& links() const { return links_; }
  const HierarchyConfig& hierarchy_config() const { return hierarchy_config_; }

  std::map<std::string, CapacityLedger>& link_ledgers() { return link_ledgers_; }
  const std::map<std::string, CapacityLedger>& link_ledgers() const { return link_ledgers_; }

 private:
  void apply(const SimEvent& e);

  std::uint64_t tick_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t next_seq_ = 0;
  Rational overhead_ = Rational(1140, 10000);
  std::string pool_ = "2001:db8::/48";

  std::vector<SiteSpec> sites_;
  std::vector<std::string> host_order_;
  std::map<std::string, HostSpec> hosts_;
  std::map<std::string, LinkSpec> links_;
  std::map<std::string, CapacityLedger> link_ledgers_;
  HierarchyConfig hierarchy_config_;

  std::map<std::pair<std::uint64_t, std::uint64_t>, SimEvent> queue_;  // (tick, seq)
  std::set<std::string> dead_hosts_;
  std::set<std::string> dead_links_;
};

}  // namespace edgeplane
