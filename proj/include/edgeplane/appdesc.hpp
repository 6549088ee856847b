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
#include <string>
#include <string_view>
#include <vector>

#include "edgeplane/error.hpp"
#include "edgeplane/plan.hpp"
#include "edgeplane/rational.hpp"

namespace edgeplane {

/// Reference into a public or private container registry.
struct RegistryRef {
  enum class Kind { public_registry, private_registry };

  Kind registry = Kind::public_registry;
  std::string name;
  std::string tag;

  std::string to_string() const;  // "public/name:tag"
  static RegistryRef parse(std::string_view text);

  bool operator==(const RegistryRef&) const = default;
};

struct ResourceRequest {
  Rational cpu_scale;
  Rational bandwidth_kbps;
  Rational latency_budget_ms;

  bool operator==(const ResourceRequest&) const = default;
};

/// A deployable application component. Predicates are capability -> pattern
/// (literal or "*") constraints over agent capabilities.
struct FunctionalUnit {
  std::string unit_id;
  RegistryRef image;
  std::map<std::string, std::string> predicates;
  ResourceRequest request;
  bool location_independent = false;

  bool operator==(const FunctionalUnit&) const = default;
};

struct DataflowEdge {
  std::string producer;
  std::string consumer;
  Rational bandwidth_kbps;
  Rational latency_budget_ms;

  bool operator==(const DataflowEdge&) const = default;
};

/// Application topology: units plus an acyclic dataflow edge set.
struct AppDescriptor {
  std::string app_id;
  std::vector<FunctionalUnit> units;  // declaration order
  std::vector<DataflowEdge> edges;
  Rational slc_tolerance_percent = Rational(2);

  const FunctionalUnit* find_unit(const std::string& unit_id) const;

  /// Unit ids in topological dataflow order (producers first); units tie
  /// by declaration order, so the result is deterministic.
  std::vector<std::string> topological_unit_order() const;

  bool operator==(const AppDescriptor&) const = default;
};

/// Parses the descriptor format: sections `app`, `unit <id>`,
/// `edge <src> <dst>`, each followed by `key = value` lines; predicates as
/// `require.<capability> = <pattern>`. Errors carry line numbers.
AppDescriptor parse_descriptor(std::string_view text);

/// Canonical text for a descriptor; parse(emit(d)) == d.
std::string emit_descriptor(const AppDescriptor& d);

/// Append-only image store.
class Registry {
 public:
  void put(RegistryRef ref) { entries_.push_back(std::move(ref)); }
  const std::vector<RegistryRef>& entries() const { return entries_; }

 private:
  std::vector<RegistryRef> entries_;
};

/// Captured deployment: the plan, the descriptor that produced it, and the
/// private snapshot image of every unit.
struct Snapshot {
  std::string snapshot_id;
  std::string app_id;
  PlacementPlan plan;
  AppDescriptor descriptor;
  std::map<std::string, RegistryRef> unit_images;
  std::uint64_t taken_at = 0;
};

/// Snapshots an active plan into the private registry. The snapshot id is
/// deterministic from (app_id, tick). Throws InactivePlan when any unit is
/// not placed.
Snapshot snapshot(const PlacementPlan& plan, const AppDescriptor& descriptor,
                  Registry& registry, std::uint64_t tick);

}  // namespace edgeplane
