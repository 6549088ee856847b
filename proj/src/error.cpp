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

#include "edgeplane/error.hpp"

namespace edgeplane {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::duplicate_id: return "DuplicateId";
    case Errc::dangling_host_ref: return "DanglingHostRef";
    case Errc::unknown_region: return "UnknownRegion";
    case Errc::unknown_address: return "UnknownAddress";
    case Errc::policy_denied: return "PolicyDenied";
    case Errc::pool_exhausted: return "PoolExhausted";
    case Errc::duplicate_site: return "DuplicateSite";
    case Errc::site_exhausted: return "SiteExhausted";
    case Errc::unknown_site: return "UnknownSite";
    case Errc::duplicate_host: return "DuplicateHost";
    case Errc::unknown_host: return "UnknownHost";
    case Errc::duplicate_unit: return "DuplicateUnit";
    case Errc::unknown_id: return "UnknownId";
    case Errc::non_positive_score: return "NonPositiveScore";
    case Errc::non_positive_scale: return "NonPositiveScale";
    case Errc::non_positive_limit: return "NonPositiveLimit";
    case Errc::non_positive_nominal: return "NonPositiveNominal";
    case Errc::insufficient_bandwidth: return "InsufficientBandwidth";
    case Errc::insufficient_cpu: return "InsufficientCpu";
    case Errc::duplicate_reservation: return "DuplicateReservation";
    case Errc::unknown_reservation: return "UnknownReservation";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_unit_in_edge: return "UnknownUnitInEdge";
    case Errc::cyclic_dataflow: return "CyclicDataflow";
    case Errc::duplicate_unit_id: return "DuplicateUnitId";
    case Errc::inactive_plan: return "InactivePlan";
    case Errc::no_candidates: return "NoCandidates";
    case Errc::placement_failed: return "PlacementFailed";
    case Errc::address_exhausted: return "AddressExhausted";
    case Errc::offload_impossible: return "OffloadImpossible";
    case Errc::dangling_endpoint: return "DanglingEndpoint";
    case Errc::duplicate_node_id: return "DuplicateNodeId";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::past_tick: return "PastTick";
    case Errc::unknown_link: return "UnknownLink";
    case Errc::unreachable: return "Unreachable";
    case Errc::empty_window: return "EmptyWindow";
    case Errc::mixed_units: return "MixedUnits";
    case Errc::kind_mismatch: return "KindMismatch";
    case Errc::no_overlap: return "NoOverlap";
  }
  return "UnknownError";
}

}  // namespace edgeplane
