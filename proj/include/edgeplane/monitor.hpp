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
#include <span>
#include <string>
#include <vector>

#include "edgeplane/qos.hpp"
#include "edgeplane/rational.hpp"

namespace edgeplane {

enum class Scope { agent, region, global_scope };

std::string_view scope_name(Scope s);

/// A measurement sample stamped with the tick it was taken at.
struct TimedSample {
  std::uint64_t tick = 0;
  MeasurementSample sample;
};

/// Windowed aggregate of one metric kind at one scope. The average is held
/// exact; rounding to three decimals happens at render time.
struct MetricRollup {
  Scope scope = Scope::agent;
  std::string scope_id;
  std::uint64_t window_start = 0;
  std::uint64_t window_end = 0;
  MetricKind kind = MetricKind::bandwidth;
  std::string units;
  Rational min;
  Rational max;
  Rational sum;
  std::size_t count = 0;

  Rational avg() const { return count ? sum / Rational(static_cast<std::int64_t>(count)) : Rational(0); }
  Rational avg_rounded() const { return avg().round_decimals(3); }
};

/// Exact min/avg/max/count over the samples that fall inside the window.
/// Throws EmptyWindow when nothing does, MixedUnits on inconsistent units.
MetricRollup aggregate(std::span<const TimedSample> samples, Scope scope,
                       const std::string& scope_id, std::uint64_t window_start,
                       std::uint64_t window_end);

/// Merges same-kind rollups (count, min, max exact; avg from exact sums),
/// e.g. per-region rollups into a global one.
MetricRollup merge_rollups(std::span<const MetricRollup> rollups, Scope scope,
                           const std::string& scope_id);

/// Observed-vs-committed verdict for one dimension of a reservation.
struct SlcReport {
  std::string reservation_id;
  MetricKind dimension = MetricKind::bandwidth;
  Rational committed;        // committed rate / budget / predicted score
  Rational observed;
  Rational tolerance_percent;
  bool met = false;
  bool overdelivery = false;  // bandwidth delivered above committed * (1+tol)

  /// 100 * (observed - committed) / committed, two decimals; nullopt when
  /// the committed value is zero.
  std::optional<Rational> error_percent() const;
};

/// Applies the comparison rules: bandwidth met iff avg >= committed*(1-tol);
/// latency met iff avg <= budget*(1+tol); cpu met iff avg score >=
/// predict_simulated_score(scale)*(1-tol). Throws KindMismatch when the
/// rollup's units do not fit its kind.
SlcReport verify_slc(const CirReservation& r, const MetricRollup& rollup,
                     const Rational& tolerance_percent, const CalibrationParams& params = {});

/// A tick-aligned series of KPI or metric values.
struct Series {
  std::vector<std::pair<std::uint64_t, double>> points;
};

struct CorrelationEntry {
  std::string kpi_id;
  std::string metric_id;
  std::size_t aligned_points = 0;
  std::optional<double> pearson;  // nullopt: undefined (zero variance or n < 2)
};

/// Pearson correlation per (kpi, metric) pair over ticks aligned inside the
/// window. Throws NoOverlap for an empty window.
std::vector<CorrelationEntry> correlate(const std::map<std::string, Series>& app_kpis,
                                        const std::map<std::string, Series>& infra_metrics,
                                        std::uint64_t window_start, std::uint64_t window_end);

}  // namespace edgeplane
