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

#include <doctest.h>

#include <random>

#include "edgeplane/monitor.hpp"

using namespace edgeplane;

namespace {

Rational r(const char* text) { return Rational::parse(text); }

TimedSample latency_sample(std::uint64_t tick, const char* value) {
  TimedSample ts;
  ts.tick = tick;
  ts.sample.kind = MetricKind::latency;
  ts.sample.nominal = Rational(1);
  ts.sample.observed = {r(value)};
  ts.sample.units = "ms";
  return ts;
}

MetricRollup rollup_of(MetricKind kind, const char* units, const char* avg) {
  MetricRollup rollup;
  rollup.kind = kind;
  rollup.units = units;
  rollup.min = r(avg);
  rollup.max = r(avg);
  rollup.sum = r(avg);
  rollup.count = 1;
  rollup.window_end = 1;
  return rollup;
}

}  // namespace

TEST_CASE("aggregate computes exact min/avg/max/count") {
  std::vector<TimedSample> samples = {latency_sample(1, "1.076"), latency_sample(2, "1.117"),
                                      latency_sample(3, "1.144")};
  MetricRollup rollup = aggregate(samples, Scope::agent, "r1/a1", 0, 10);
  CHECK(rollup.count == 3);
  CHECK(rollup.min == r("1.076"));
  CHECK(rollup.max == r("1.144"));
  CHECK(rollup.avg() == r("3.337") / Rational(3));        // exact
  CHECK(rollup.avg_rounded() == r("1.112"));              // hand arithmetic
  CHECK(rollup.min <= rollup.avg());
  CHECK(rollup.avg() <= rollup.max);

  SUBCASE("single sample collapses to one value") {
    std::vector<TimedSample> one = {latency_sample(1, "4.5")};
    MetricRollup single = aggregate(one, Scope::agent, "x", 0, 10);
    CHECK(single.min == r("4.5"));
    CHECK(single.avg() == r("4.5"));
    CHECK(single.max == r("4.5"));
  }

  SUBCASE("window filtering and the empty window error") {
    CHECK(aggregate(samples, Scope::agent, "x", 2, 3).count == 2);
    CHECK_THROWS_AS(aggregate(samples, Scope::agent, "x", 7, 9), SimError);
    CHECK_THROWS_AS(aggregate({}, Scope::agent, "x", 0, 10), SimError);
  }

  SUBCASE("mixed units are rejected") {
    std::vector<TimedSample> mixed = samples;
    mixed.push_back(latency_sample(4, "2"));
    mixed.back().sample.units = "s";
    CHECK_THROWS_AS(aggregate(mixed, Scope::agent, "x", 0, 10), SimError);
  }
}

TEST_CASE("region-then-global merge equals one flat aggregation") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<TimedSample> all;
    std::vector<std::vector<TimedSample>> regions(1 + rng() % 4);
    for (std::size_t i = 0; i < 40; ++i) {
      TimedSample ts = latency_sample(i % 10, "0");
      ts.sample.observed = {Rational(static_cast<std::int64_t>(rng() % 100000), 1000)};
      all.push_back(ts);
      regions[rng() % regions.size()].push_back(ts);
    }
    // regions may be empty; merge only the populated ones
    std::vector<MetricRollup> per_region;
    std::vector<TimedSample> populated;
    for (std::size_t i = 0; i < regions.size(); ++i)
      if (!regions[i].empty())
        per_region.push_back(aggregate(regions[i], Scope::region, "r" + std::to_string(i), 0, 10));
    // distribute: every sample went to exactly one region
    MetricRollup merged = merge_rollups(per_region, Scope::global_scope, "global");
    MetricRollup flat = aggregate(all, Scope::global_scope, "global", 0, 10);
    CHECK(merged.count == flat.count);
    CHECK(merged.min == flat.min);
    CHECK(merged.max == flat.max);
    CHECK(merged.avg() == flat.avg());  // exact, not just within 1e-9
  }
}

TEST_CASE("verify_slc applies the three comparison rules") {
  CirReservation res;
  res.reservation_id = "res";
  res.bandwidth_kbps = r("100000");  // 100 Mbit/s in kbps
  res.latency_budget_ms = r("10");
  res.cpu_scale = r("1.1140");

  SUBCASE("bandwidth within tolerance is met") {
    SlcReport report =
        verify_slc(res, rollup_of(MetricKind::bandwidth, "kbps", "99450"), Rational(1));
    CHECK(report.met);
    CHECK(!report.overdelivery);
    CHECK(*report.error_percent() == r("-0.55"));
  }
  SUBCASE("bandwidth below tolerance is violated") {
    SlcReport report =
        verify_slc(res, rollup_of(MetricKind::bandwidth, "kbps", "49500"), Rational(1));
    CHECK(!report.met);
  }
  SUBCASE("five-fold over-delivery passes but is flagged") {
    CirReservation tiny = res;
    tiny.bandwidth_kbps = r("10");
    SlcReport report =
        verify_slc(tiny, rollup_of(MetricKind::bandwidth, "kbps", "49.5"), Rational(1));
    CHECK(report.met);
    CHECK(report.overdelivery);
  }
  SUBCASE("latency inside the budget is met") {
    SlcReport report = verify_slc(res, rollup_of(MetricKind::latency, "ms", "10.033"),
                                  Rational(1));
    CHECK(report.met);
    SlcReport over = verify_slc(res, rollup_of(MetricKind::latency, "ms", "10.2"), Rational(1));
    CHECK(!over.met);
  }
  SUBCASE("cpu compares against the predicted simulated score") {
    // scale 1.1140 against the reference core predicts 44.17
    SlcReport report =
        verify_slc(res, rollup_of(MetricKind::cpu, "score", "44.17"), Rational(0));
    CHECK(report.committed == r("44.17"));
    CHECK(report.met);
    SlcReport low = verify_slc(res, rollup_of(MetricKind::cpu, "score", "42.70"), Rational(1));
    CHECK(!low.met);
  }
  SUBCASE("units inconsistent with the kind throw") {
    CHECK_THROWS_AS(verify_slc(res, rollup_of(MetricKind::latency, "kbps", "1"), Rational(1)),
                    SimError);
  }
}

TEST_CASE("verify_slc is monotone in the observed value") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 100; ++trial) {
    CirReservation res;
    res.reservation_id = "res";
    res.bandwidth_kbps = Rational(static_cast<std::int64_t>(1 + rng() % 10000));
    res.latency_budget_ms = Rational(static_cast<std::int64_t>(1 + rng() % 100));
    res.cpu_scale = Rational(1);
    Rational tol(static_cast<std::int64_t>(rng() % 500), 100);

    Rational observed(static_cast<std::int64_t>(rng() % 20000), 2);
    Rational better_bw = observed + Rational(static_cast<std::int64_t>(rng() % 1000));
    MetricRollup a = rollup_of(MetricKind::bandwidth, "kbps", "0");
    a.min = a.max = a.sum = observed;
    MetricRollup b = a;
    b.min = b.max = b.sum = better_bw;
    bool met_before = verify_slc(res, a, tol).met;
    bool met_after = verify_slc(res, b, tol).met;
    if (met_before) CHECK(met_after);  // more bandwidth never hurts

    MetricRollup la = rollup_of(MetricKind::latency, "ms", "0");
    la.min = la.max = la.sum = observed;
    MetricRollup lb = la;
    Rational better_lat = observed / Rational(2);
    lb.min = lb.max = lb.sum = better_lat;
    if (verify_slc(res, la, tol).met) CHECK(verify_slc(res, lb, tol).met);
  }
}

TEST_CASE("correlation") {
  Series kpi;
  Series same;
  Series negated;
  Series constant;
  for (std::uint64_t t = 0; t < 10; ++t) {
    double v = static_cast<double>(t * t % 7);
    kpi.points.emplace_back(t, v);
    same.points.emplace_back(t, v);
    negated.points.emplace_back(t, -v);
    constant.points.emplace_back(t, 3.0);
  }
  std::map<std::string, Series> kpis{{"kpi", kpi}};
  std::map<std::string, Series> metrics{
      {"same", same}, {"negated", negated}, {"constant", constant}};
  std::vector<CorrelationEntry> entries = correlate(kpis, metrics, 0, 9);
  REQUIRE(entries.size() == 3);
  for (const CorrelationEntry& e : entries) {
    if (e.metric_id == "same") {
      REQUIRE(e.pearson);
      CHECK(*e.pearson == doctest::Approx(1.0));
    } else if (e.metric_id == "negated") {
      REQUIRE(e.pearson);
      CHECK(*e.pearson == doctest::Approx(-1.0));
    } else {
      CHECK(!e.pearson);  // zero variance reports n/a
    }
  }
  CHECK_THROWS_AS(correlate(kpis, metrics, 9, 2), SimError);
  CHECK_THROWS_AS(correlate({}, metrics, 0, 9), SimError);
}
