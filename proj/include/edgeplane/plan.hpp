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
#include "edgeplane/hierarchy.hpp"
#include "edgeplane/rational.hpp"

namespace edgeplane {

enum class UnitState { placed, failed, migrating };

std::string_view unit_state_name(UnitState s);

/// Where one functional unit landed: agent, /128 address, reservations,
/// and the resources those reservations committed.
struct UnitAssignment {
  AgentAddress agent;
  Ipv6Prefix address;
  std::vector<std::string> reservation_ids;
  Rational cpu_scale;
  Rational bandwidth_kbps;

  bool operator==(const UnitAssignment&) const = default;
};

struct PlacementPlan {
  std::string app_id;
  std::map<std::string, UnitAssignment> assignments;  // placed units only
  std::map<std::string, UnitState> state;

  bool active() const;  // every unit placed

  /// Sorted text, one `unit<TAB>agent<TAB>address<TAB>cpu<TAB>bw` line per
  /// unit; non-placed units carry their state in the agent column.
  std::string serialize() const;

  bool operator==(const PlacementPlan&) const = default;
};

}  // namespace edgeplane
