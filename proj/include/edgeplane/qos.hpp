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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgeplane/error.hpp"
#include "edgeplane/rational.hpp"

namespace edgeplane {

/// CPU scale calibration against one reference core.
struct CalibrationParams {
  Rational reference_score = Rational(4417, 100);  // 44.17
  Rational overhead = Rational(1140, 10000);       // 0.1140
};

struct CpuProfile {
  std::string cpu_name;
  Rational native_score;
  Rational scale;
  std::optional<Rational> simulated_score;
};

/// scale = (native / reference) * (1 + overhead). Exact; callers round to
/// four decimals for reporting.
Rational derive_cpu_scale(const Rational& native_score, const CalibrationParams& params);

/// Inverse of derive_cpu_scale: the score a perfectly shaped reference core
/// at `scale` would produce.
Rational predict_simulated_score(const Rational& scale, const CalibrationParams& params);

/// 100 * (simulated - native) / native, rounded half-away to one decimal.
Rational cpu_error_percent(const Rational& simulated_score, const Rational& native_score);

/// 100 * (mean(send, receive) - limit) / limit, rounded half-away to one
/// decimal.
Rational bandwidth_error_percent(const Rational& limit, const Rational& send,
                                 const Rational& receive);

/// 100 * (nominal - (observed_avg - baseline_avg)) / nominal, rounded
/// half-away to two decimals.
Rational latency_error_percent(const Rational& nominal_added_ms,
                               const Rational& observed_avg_ms,
                               const Rational& baseline_avg_ms);

/// Committed information rate reservation: bandwidth plus a latency budget
/// and a CPU slice, held by an agent or functional unit.
struct CirReservation {
  std::string reservation_id;
  Rational bandwidth_kbps;
  Rational latency_budget_ms;
  Rational cpu_scale;
  std::string holder;
};

/// Capacity state of one node (host or link). Admission keeps
/// sum(children.bandwidth) <= bandwidth capacity and
/// sum(children.cpu_scale) <= cpu capacity.
class CapacityLedger {
 public:
  CapacityLedger() = default;
  CapacityLedger(std::string node_id, Rational bandwidth_capacity_kbps,
                 Rational cpu_capacity_cores);

  struct Rejection {
    Errc dimension;      // insufficient_bandwidth or insufficient_cpu
    Rational headroom;   // available amount in the violated dimension
  };

  /// Admits iff both capacity invariants hold afterwards; returns the
  /// violated dimension and its headroom otherwise. Throws
  /// DuplicateReservation on id reuse.
  std::optional<Rejection> admit(const CirReservation& r);

  /// Removes a reservation; throws UnknownReservation.
  void release(const std::string& reservation_id);

  Rational bandwidth_headroom() const { return bandwidth_capacity_ - committed_bandwidth_; }
  Rational cpu_headroom() const { return cpu_capacity_ - committed_cpu_; }
  Rational committed_bandwidth() const { return committed_bandwidth_; }
  Rational committed_cpu() const { return committed_cpu_; }
  const Rational& bandwidth_capacity() const { return bandwidth_capacity_; }
  const Rational& cpu_capacity() const { return cpu_capacity_; }
  const std::string& node_id() const { return node_id_; }
  const std::map<std::string, CirReservation>& children() const { return children_; }
  const CirReservation* find(const std::string& reservation_id) const;

 private:
  std::string node_id_;
  Rational bandwidth_capacity_;
  Rational cpu_capacity_;
  Rational committed_bandwidth_;
  Rational committed_cpu_;
  std::map<std::string, CirReservation> children_;
};

enum class MetricKind { bandwidth, latency, cpu };

std::string_view metric_kind_name(MetricKind kind);

/// One recorded measurement. Roles of `observed` depend on kind:
/// bandwidth send/receive, latency min/avg/max (or a single value from the
/// simulator), cpu score.
struct MeasurementSample {
  MetricKind kind = MetricKind::bandwidth;
  Rational nominal;
  std::vector<Rational> observed;
  std::string units;
};

/// Parses the tab-separated ingest format, one sample per line:
/// `kind<TAB>nominal<TAB>unit<TAB>v1<TAB>v2...`. '#' comments and blank
/// lines are skipped. Parse errors carry line numbers.
std::vector<MeasurementSample> parse_samples(std::string_view text);

/// Renders the three measurement tables (bandwidth, latency, cpu) from
/// ingested samples, computing the error and scale columns. Rows keep input
/// order; the latency baseline is the nominal-0 row's average.
std::string render_tables(const std::vector<MeasurementSample>& samples,
                          const CalibrationParams& params);

}  // namespace edgeplane
