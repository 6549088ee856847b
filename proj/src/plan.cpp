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

#include "edgeplane/plan.hpp"

namespace edgeplane {

std::string_view unit_state_name(UnitState s) {
  switch (s) {
    case UnitState::placed: return "placed";
    case UnitState::failed: return "failed";
    case UnitState::migrating: return "migrating";
  }
  return "?";
}

bool PlacementPlan::active() const {
  if (state.empty()) return false;
  for (const auto& [unit, s] : state)
    if (s != UnitState::placed) return false;
  return true;
}

std::string PlacementPlan::serialize() const {
  std::string out;
  for (const auto& [unit_id, s] : state) {
    auto it = assignments.find(unit_id);
    if (s == UnitState::placed && it != assignments.end()) {
      const UnitAssignment& a = it->second;
      out += unit_id + "\t" + a.agent.to_string() + "\t" + a.address.to_string() + "\t" +
             a.cpu_scale.to_string() + "\t" + a.bandwidth_kbps.to_string() + "\n";
    } else {
      out += unit_id + "\t" + std::string(unit_state_name(s)) + "\t-\t-\t-\n";
    }
  }
  return out;
}

}  // namespace edgeplane
