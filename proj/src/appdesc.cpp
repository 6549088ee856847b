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

#include "edgeplane/appdesc.hpp"

#include <algorithm>
#include <sstream>

namespace edgeplane {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void parse_fail(Errc code, int line_no, const std::string& what) {
  throw SimError(code, "descriptor line " + std::to_string(line_no) + ": " + what);
}

Rational parse_rational_or_fail(const std::string& value, int line_no) {
  try {
    return Rational::parse(value);
  } catch (const std::exception& e) {
    parse_fail(Errc::syntax_error, line_no, e.what());
  }
}

}  // namespace

std::string RegistryRef::to_string() const {
  return std::string(registry == Kind::public_registry ? "public" : "private") + "/" +
         name + ":" + tag;
}

RegistryRef RegistryRef::parse(std::string_view text) {
  auto slash = text.find('/');
  auto colon = text.rfind(':');
  if (slash == std::string_view::npos || colon == std::string_view::npos || colon < slash)
    throw SimError(Errc::syntax_error,
                   "bad image reference '" + std::string(text) + "' (want registry/name:tag)");
  RegistryRef ref;
  std::string_view kind = text.substr(0, slash);
  if (kind == "public") {
    ref.registry = Kind::public_registry;
  } else if (kind == "private") {
    ref.registry = Kind::private_registry;
  } else {
    throw SimError(Errc::syntax_error, "unknown registry '" + std::string(kind) + "'");
  }
  ref.name = std::string(text.substr(slash + 1, colon - slash - 1));
  ref.tag = std::string(text.substr(colon + 1));
  if (ref.name.empty() || ref.tag.empty())
    throw SimError(Errc::syntax_error,
                   "image name and tag must be non-empty in '" + std::string(text) + "'");
  return ref;
}

const FunctionalUnit* AppDescriptor::find_unit(const std::string& unit_id) const {
  for (const auto& u : units)
    if (u.unit_id == unit_id) return &u;
  return nullptr;
}

std::vector<std::string> AppDescriptor::topological_unit_order() const {
  std::map<std::string, int> indegree;
  for (const auto& u : units) indegree[u.unit_id] = 0;
  for (const auto& e : edges) ++indegree[e.consumer];

  std::vector<std::string> order;
  std::vector<bool> done(units.size(), false);
  while (order.size() < units.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (done[i] || indegree[units[i].unit_id] != 0) continue;
      done[i] = true;
      order.push_back(units[i].unit_id);
      for (const auto& e : edges)
        if (e.producer == units[i].unit_id) --indegree[e.consumer];
      progressed = true;
      break;
    }
    if (!progressed)
      throw SimError(Errc::cyclic_dataflow, "dataflow edges form a cycle");
  }
  return order;
}

AppDescriptor parse_descriptor(std::string_view text) {
  AppDescriptor d;
  FunctionalUnit* unit = nullptr;
  DataflowEdge* edge = nullptr;
  bool in_app = false;
  bool saw_app = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos) {
      // Section header.
      std::vector<std::string> tok = split_ws(line);
      unit = nullptr;
      edge = nullptr;
      in_app = false;
      if (tok[0] == "app" && tok.size() == 1) {
        in_app = true;
        saw_app = true;
      } else if (tok[0] == "unit" && tok.size() == 2) {
        if (d.find_unit(tok[1]))
          parse_fail(Errc::duplicate_unit_id, line_no, "duplicate unit '" + tok[1] + "'");
        d.units.push_back(FunctionalUnit{});
        unit = &d.units.back();
        unit->unit_id = tok[1];
      } else if (tok[0] == "edge" && tok.size() == 3) {
        d.edges.push_back(DataflowEdge{tok[1], tok[2], Rational(0), Rational(0)});
        edge = &d.edges.back();
      } else {
        parse_fail(Errc::syntax_error, line_no, "bad section header '" + line + "'");
      }
      continue;
    }

    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      parse_fail(Errc::syntax_error, line_no, "bad key/value line '" + line + "'");

    if (in_app) {
      if (key == "id") {
        d.app_id = value;
      } else if (key == "slc.tolerance_percent") {
        d.slc_tolerance_percent = parse_rational_or_fail(value, line_no);
      } else {
        parse_fail(Errc::syntax_error, line_no, "unknown app key '" + key + "'");
      }
    } else if (unit) {
      if (key == "image") {
        try {
          unit->image = RegistryRef::parse(value);
        } catch (const SimError& e) {
          parse_fail(Errc::syntax_error, line_no, e.what());
        }
      } else if (key == "cpu_scale") {
        unit->request.cpu_scale = parse_rational_or_fail(value, line_no);
      } else if (key == "bandwidth_kbps") {
        unit->request.bandwidth_kbps = parse_rational_or_fail(value, line_no);
      } else if (key == "latency_budget_ms") {
        unit->request.latency_budget_ms = parse_rational_or_fail(value, line_no);
      } else if (key == "location_independent") {
        if (value != "true" && value != "false")
          parse_fail(Errc::syntax_error, line_no, "location_independent wants true|false");
        unit->location_independent = value == "true";
      } else if (key.starts_with("require.")) {
        std::string cap = key.substr(8);
        if (cap.empty()) parse_fail(Errc::syntax_error, line_no, "empty predicate name");
        unit->predicates[cap] = value;
      } else {
        parse_fail(Errc::syntax_error, line_no, "unknown unit key '" + key + "'");
      }
    } else if (edge) {
      if (key == "bandwidth_kbps") {
        edge->bandwidth_kbps = parse_rational_or_fail(value, line_no);
      } else if (key == "latency_budget_ms") {
        edge->latency_budget_ms = parse_rational_or_fail(value, line_no);
      } else {
        parse_fail(Errc::syntax_error, line_no, "unknown edge key '" + key + "'");
      }
    } else {
      parse_fail(Errc::syntax_error, line_no, "key/value line outside any section");
    }
  }

  if (!saw_app || d.app_id.empty())
    throw SimError(Errc::syntax_error, "descriptor needs an `app` section with an id");
  for (const auto& u : d.units) {
    if (u.image.name.empty() || u.image.tag.empty())
      throw SimError(Errc::syntax_error, "unit '" + u.unit_id + "' has no image");
    if (u.location_independent) {
      for (const auto& [cap, pattern] : u.predicates)
        if ((cap == "site" || cap == "agent") && pattern != "*")
          throw SimError(Errc::syntax_error,
                         "location-independent unit '" + u.unit_id +
                             "' must not pin " + cap);
    }
  }
  for (const auto& e : d.edges) {
    if (!d.find_unit(e.producer))
      throw SimError(Errc::unknown_unit_in_edge,
                     "edge references undeclared unit '" + e.producer + "'");
    if (!d.find_unit(e.consumer))
      throw SimError(Errc::unknown_unit_in_edge,
                     "edge references undeclared unit '" + e.consumer + "'");
  }
  d.topological_unit_order();  // throws CyclicDataflow on a cycle
  return d;
}

std::string emit_descriptor(const AppDescriptor& d) {
  std::string out;
  out += "app\n";
  out += "id = " + d.app_id + "\n";
  out += "slc.tolerance_percent = " + d.slc_tolerance_percent.to_string() + "\n";
  for (const auto& u : d.units) {
    out += "\nunit " + u.unit_id + "\n";
    out += "image = " + u.image.to_string() + "\n";
    out += "cpu_scale = " + u.request.cpu_scale.to_string() + "\n";
    out += "bandwidth_kbps = " + u.request.bandwidth_kbps.to_string() + "\n";
    out += "latency_budget_ms = " + u.request.latency_budget_ms.to_string() + "\n";
    out += std::string("location_independent = ") +
           (u.location_independent ? "true" : "false") + "\n";
    for (const auto& [cap, pattern] : u.predicates)
      out += "require." + cap + " = " + pattern + "\n";
  }
  for (const auto& e : d.edges) {
    out += "\nedge " + e.producer + " " + e.consumer + "\n";
    out += "bandwidth_kbps = " + e.bandwidth_kbps.to_string() + "\n";
    out += "latency_budget_ms = " + e.latency_budget_ms.to_string() + "\n";
  }
  return out;
}

Snapshot snapshot(const PlacementPlan& plan, const AppDescriptor& descriptor,
                  Registry& registry, std::uint64_t tick) {
  if (!plan.active())
    throw SimError(Errc::inactive_plan,
                   "plan for '" + plan.app_id + "' has non-placed units");
  Snapshot snap;
  snap.snapshot_id = plan.app_id + "@" + std::to_string(tick);
  snap.app_id = plan.app_id;
  snap.plan = plan;
  snap.descriptor = descriptor;
  snap.taken_at = tick;
  for (const auto& [unit_id, assignment] : plan.assignments) {
    RegistryRef image;
    image.registry = RegistryRef::Kind::private_registry;
    image.name = plan.app_id + "/" + unit_id;
    image.tag = snap.snapshot_id;
    registry.put(image);
    snap.unit_images.emplace(unit_id, std::move(image));
  }
  return snap;
}

}  // namespace edgeplane
