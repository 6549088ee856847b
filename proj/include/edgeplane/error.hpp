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

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgeplane {

enum class Errc {
  // hierarchy
  duplicate_id,
  dangling_host_ref,
  unknown_region,
  unknown_address,
  policy_denied,
  // addressing
  pool_exhausted,
  duplicate_site,
  site_exhausted,
  unknown_site,
  duplicate_host,
  unknown_host,
  duplicate_unit,
  unknown_id,
  // qos
  non_positive_score,
  non_positive_scale,
  non_positive_limit,
  non_positive_nominal,
  insufficient_bandwidth,
  insufficient_cpu,
  duplicate_reservation,
  unknown_reservation,
  // appdesc
  syntax_error,
  unknown_unit_in_edge,
  cyclic_dataflow,
  duplicate_unit_id,
  inactive_plan,
  // placement
  no_candidates,
  placement_failed,
  address_exhausted,
  offload_impossible,
  // simnet
  dangling_endpoint,
  duplicate_node_id,
  unknown_node,
  past_tick,
  unknown_link,
  unreachable,
  // monitor
  empty_window,
  mixed_units,
  kind_mismatch,
  no_overlap,
};

std::string_view errc_name(Errc code);

/// Domain error carrying a stable code alongside the human message.
class SimError : public std::runtime_error {
 public:
  SimError(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace edgeplane
