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

#include "edgeplane/qos.hpp"

#include <sstream>

namespace edgeplane {

Rational derive_cpu_scale(const Rational& native_score, const CalibrationParams& params) {
  if (native_score <= Rational(0))
    throw SimError(Errc::non_positive_score, "native score must be positive");
  return native_score / params.reference_score * (Rational(1) + params.overhead);
}

Rational predict_simulated_score(const Rational& scale, const CalibrationParams& params) {
  if (scale <= Rational(0))
    throw SimError(Errc::non_positive_scale, "scale must be positive");
  return scale * params.reference_score / (Rational(1) + params.overhead);
}

Rational cpu_error_percent(const Rational& simulated_score, const Rational& native_score) {
  if (native_score <= Rational(0))
    throw SimError(Errc::non_positive_score, "native score must be positive");
  return (Rational(100) * (simulated_score - native_score) / native_score).round_decimals(1);
}

Rational bandwidth_error_percent(const Rational& limit, const Rational& send,
                                 const Rational& receive) {
  if (limit <= Rational(0))
    throw SimError(Errc::non_positive_limit, "bandwidth limit must be positive");
  Rational mean = (send + receive) / Rational(2);
  return (Rational(100) * (mean - limit) / limit).round_decimals(1);
}

Rational latency_error_percent(const Rational& nominal_added_ms,
                               const Rational& observed_avg_ms,
                               const Rational& baseline_avg_ms) {
  if (nominal_added_ms <= Rational(0))
    throw SimError(Errc::non_positive_nominal, "nominal added latency must be positive");
  Rational measured_added = observed_avg_ms - baseline_avg_ms;
  return (Rational(100) * (nominal_added_ms - measured_added) / nominal_added_ms)
      .round_decimals(2);
}

CapacityLedger::CapacityLedger(std::string node_id, Rational bandwidth_capacity_kbps,
                               Rational cpu_capacity_cores)
    : node_id_(std::move(node_id)),
      bandwidth_capacity_(bandwidth_capacity_kbps),
      cpu_capacity_(cpu_capacity_cores) {}

std::optional<CapacityLedger::Rejection> CapacityLedger::admit(const CirReservation& r) {
  if (children_.contains(r.reservation_id))
    throw SimError(Errc::duplicate_reservation,
                   "reservation '" + r.reservation_id + "' already admitted on '" +
                       node_id_ + "'");
  if (committed_bandwidth_ + r.bandwidth_kbps > bandwidth_capacity_)
    return Rejection{Errc::insufficient_bandwidth, bandwidth_headroom()};
  if (committed_cpu_ + r.cpu_scale > cpu_capacity_)
    return Rejection{Errc::insufficient_cpu, cpu_headroom()};
  committed_bandwidth_ += r.bandwidth_kbps;
  committed_cpu_ += r.cpu_scale;
  children_.emplace(r.reservation_id, r);
  return std::nullopt;
}

void CapacityLedger::release(const std::string& reservation_id) {
  auto it = children_.find(reservation_id);
  if (it == children_.end())
    throw SimError(Errc::unknown_reservation,
                   "no reservation '" + reservation_id + "' on '" + node_id_ + "'");
  committed_bandwidth_ -= it->second.bandwidth_kbps;
  committed_cpu_ -= it->second.cpu_scale;
  children_.erase(it);
}

const CirReservation* CapacityLedger::find(const std::string& reservation_id) const {
  auto it = children_.find(reservation_id);
  return it == children_.end() ? nullptr : &it->second;
}

std::string_view metric_kind_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::bandwidth: return "bandwidth";
    case MetricKind::latency: return "latency";
    case MetricKind::cpu: return "cpu";
  }
  return "?";
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == '\t' || c == ' ') {
      if (!cur.empty()) {
        fields.push_back(cur);
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) fields.push_back(cur);
  return fields;
}

[[noreturn]] void sample_error(int line_no, const std::string& what) {
  throw SimError(Errc::syntax_error,
                 "samples line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::vector<MeasurementSample> parse_samples(std::string_view text) {
  std::vector<MeasurementSample> samples;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() < 4) sample_error(line_no, "expected `kind nominal unit v1 ...`");
    MeasurementSample s;
    if (fields[0] == "bandwidth") {
      s.kind = MetricKind::bandwidth;
    } else if (fields[0] == "latency") {
      s.kind = MetricKind::latency;
    } else if (fields[0] == "cpu") {
      s.kind = MetricKind::cpu;
    } else {
      sample_error(line_no, "unknown kind '" + fields[0] + "'");
    }
    try {
      s.nominal = Rational::parse(fields[1]);
      for (std::size_t i = 3; i < fields.size(); ++i)
        s.observed.push_back(Rational::parse(fields[i]));
    } catch (const std::exception& e) {
      sample_error(line_no, e.what());
    }
    s.units = fields[2];
    const bool units_fit =
        (s.kind == MetricKind::bandwidth &&
         (s.units == "kbps" || s.units.find("bit") != std::string::npos)) ||
        (s.kind == MetricKind::latency && s.units == "ms") ||
        (s.kind == MetricKind::cpu && s.units == "score");
    if (!units_fit)
      sample_error(line_no, "units '" + s.units + "' do not fit kind '" + fields[0] + "'");
    samples.push_back(std::move(s));
  }
  return samples;
}

std::string render_tables(const std::vector<MeasurementSample>& samples,
                          const CalibrationParams& params) {
  std::string out;

  out += "Bandwidth Limit\tSend\tReceive\tError\tUnit\n";
  for (const auto& s : samples) {
    if (s.kind != MetricKind::bandwidth) continue;
    if (s.observed.size() < 2)
      throw SimError(Errc::syntax_error, "bandwidth sample needs send and receive values");
    Rational err = bandwidth_error_percent(s.nominal, s.observed[0], s.observed[1]);
    out += s.nominal.to_string() + "\t" + s.observed[0].to_string() + "\t" +
           s.observed[1].to_string() + "\t" + err.to_decimal(1) + "%\t" + s.units + "\n";
  }

  // Latency errors are relative to the un-shaped (+0) row's average.
  Rational baseline(0);
  for (const auto& s : samples)
    if (s.kind == MetricKind::latency && s.nominal.is_zero() && s.observed.size() >= 2)
      baseline = s.observed[1];
  out += "\n+Latency ms\tMin\tAvg\tMax\tAvg Error\n";
  for (const auto& s : samples) {
    if (s.kind != MetricKind::latency) continue;
    if (s.observed.size() < 3)
      throw SimError(Errc::syntax_error, "latency sample needs min, avg, max values");
    std::string err = s.nominal.is_zero()
                          ? "0.00"
                          : latency_error_percent(s.nominal, s.observed[1], baseline)
                                .to_decimal(2);
    out += s.nominal.to_string() + "\t" + s.observed[0].to_string() + "\t" +
           s.observed[1].to_string() + "\t" + s.observed[2].to_string() + "\t" + err + "%\n";
  }

  out += "\nNative\tScale\tSimulated\tError\n";
  for (const auto& s : samples) {
    if (s.kind != MetricKind::cpu) continue;
    if (s.observed.empty())
      throw SimError(Errc::syntax_error, "cpu sample needs a simulated score value");
    Rational scale = derive_cpu_scale(s.nominal, params);
    Rational err = cpu_error_percent(s.observed[0], s.nominal);
    out += s.nominal.to_string() + "\t" + scale.to_decimal(4) + "\t" +
           s.observed[0].to_string() + "\t" + err.to_decimal(1) + "%\n";
  }

  return out;
}

}  // namespace edgeplane
