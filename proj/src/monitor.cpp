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

#include "edgeplane/monitor.hpp"

#include <cmath>

namespace edgeplane {

std::string_view scope_name(Scope s) {
  switch (s) {
    case Scope::agent: return "agent";
    case Scope::region: return "region";
    case Scope::global_scope: return "global";
  }
  return "?";
}

MetricRollup aggregate(std::span<const TimedSample> samples, Scope scope,
                       const std::string& scope_id, std::uint64_t window_start,
                       std::uint64_t window_end) {
  if (window_end < window_start)
    throw SimError(Errc::empty_window, "window end precedes start");
  MetricRollup r;
  r.scope = scope;
  r.scope_id = scope_id;
  r.window_start = window_start;
  r.window_end = window_end;
  bool first = true;
  for (const TimedSample& ts : samples) {
    if (ts.tick < window_start || ts.tick > window_end) continue;
    if (first) {
      r.kind = ts.sample.kind;
      r.units = ts.sample.units;
    } else if (ts.sample.kind != r.kind || ts.sample.units != r.units) {
      throw SimError(Errc::mixed_units, "samples mix kinds or units in one rollup");
    }
    for (const Rational& v : ts.sample.observed) {
      if (first || v < r.min) r.min = v;
      if (first || v > r.max) r.max = v;
      r.sum += v;
      ++r.count;
      first = false;
    }
  }
  if (r.count == 0)
    throw SimError(Errc::empty_window, "no samples in window for '" + scope_id + "'");
  return r;
}

MetricRollup merge_rollups(std::span<const MetricRollup> rollups, Scope scope,
                           const std::string& scope_id) {
  if (rollups.empty())
    throw SimError(Errc::empty_window, "nothing to merge for '" + scope_id + "'");
  MetricRollup out;
  out.scope = scope;
  out.scope_id = scope_id;
  out.kind = rollups.front().kind;
  out.units = rollups.front().units;
  out.window_start = rollups.front().window_start;
  out.window_end = rollups.front().window_end;
  bool first = true;
  for (const MetricRollup& r : rollups) {
    if (r.kind != out.kind || r.units != out.units)
      throw SimError(Errc::mixed_units, "cannot merge rollups of different kinds");
    if (first || r.min < out.min) out.min = r.min;
    if (first || r.max > out.max) out.max = r.max;
    if (r.window_start < out.window_start) out.window_start = r.window_start;
    if (r.window_end > out.window_end) out.window_end = r.window_end;
    out.sum += r.sum;
    out.count += r.count;
    first = false;
  }
  return out;
}

std::optional<Rational> SlcReport::error_percent() const {
  if (committed.is_zero()) return std::nullopt;
  return (Rational(100) * (observed - committed) / committed).round_decimals(2);
}

SlcReport verify_slc(const CirReservation& r, const MetricRollup& rollup,
                     const Rational& tolerance_percent, const CalibrationParams& params) {
  const bool units_fit = (rollup.kind == MetricKind::bandwidth &&
                          (rollup.units == "kbps" || rollup.units.find("bit") != std::string::npos)) ||
                         (rollup.kind == MetricKind::latency && rollup.units == "ms") ||
                         (rollup.kind == MetricKind::cpu && rollup.units == "score");
  if (!units_fit)
    throw SimError(Errc::kind_mismatch,
                   "rollup units '" + rollup.units + "' do not fit kind '" +
                       std::string(metric_kind_name(rollup.kind)) + "'");

  SlcReport report;
  report.reservation_id = r.reservation_id;
  report.dimension = rollup.kind;
  report.observed = rollup.avg();
  report.tolerance_percent = tolerance_percent;
  Rational tol = tolerance_percent / Rational(100);

  switch (rollup.kind) {
    case MetricKind::bandwidth:
      report.committed = r.bandwidth_kbps;
      report.met = report.observed >= report.committed * (Rational(1) - tol);
      report.overdelivery = report.observed > report.committed * (Rational(1) + tol);
      break;
    case MetricKind::latency:
      report.committed = r.latency_budget_ms;
      report.met = report.observed <= report.committed * (Rational(1) + tol);
      break;
    case MetricKind::cpu:
      report.committed = r.cpu_scale > Rational(0)
                             ? predict_simulated_score(r.cpu_scale, params)
                             : Rational(0);
      report.met = report.observed >= report.committed * (Rational(1) - tol);
      break;
  }
  return report;
}

std::vector<CorrelationEntry> correlate(const std::map<std::string, Series>& app_kpis,
                                        const std::map<std::string, Series>& infra_metrics,
                                        std::uint64_t window_start, std::uint64_t window_end) {
  if (window_end < window_start)
    throw SimError(Errc::no_overlap, "correlation window is empty");

  std::vector<CorrelationEntry> out;
  for (const auto& [kpi_id, kpi] : app_kpis) {
    std::map<std::uint64_t, double> kpi_at;
    for (const auto& [tick, value] : kpi.points)
      if (tick >= window_start && tick <= window_end) kpi_at[tick] = value;

    for (const auto& [metric_id, metric] : infra_metrics) {
      std::vector<std::pair<double, double>> aligned;
      for (const auto& [tick, value] : metric.points) {
        auto it = kpi_at.find(tick);
        if (it != kpi_at.end()) aligned.emplace_back(it->second, value);
      }
      CorrelationEntry entry;
      entry.kpi_id = kpi_id;
      entry.metric_id = metric_id;
      entry.aligned_points = aligned.size();
      if (aligned.size() >= 2) {
        double n = static_cast<double>(aligned.size());
        double sx = 0, sy = 0;
        for (const auto& [x, y] : aligned) {
          sx += x;
          sy += y;
        }
        double mx = sx / n;
        double my = sy / n;
        double sxy = 0, sxx = 0, syy = 0;
        for (const auto& [x, y] : aligned) {
          sxy += (x - mx) * (y - my);
          sxx += (x - mx) * (x - mx);
          syy += (y - my) * (y - my);
        }
        if (sxx > 0 && syy > 0) entry.pearson = sxy / std::sqrt(sxx * syy);
      }
      out.push_back(std::move(entry));
    }
  }
  if (out.empty())
    throw SimError(Errc::no_overlap, "no kpi/metric pairs to correlate");
  return out;
}

}  // namespace edgeplane
