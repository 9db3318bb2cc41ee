#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "wattribute/aggregation/design.hpp"
#include "wattribute/aggregation/feature_schema.hpp"
#include "wattribute/aggregation/interval_csv.hpp"
#include "wattribute/aggregation/intervals.hpp"
#include "wattribute/aggregation/standardizer.hpp"
#include "wattribute/error.hpp"
#include "wattribute/telemetry/stream.hpp"

using namespace wattribute;
using namespace wattribute::aggregation;
using fixtures::power;
using fixtures::proc;
using telemetry::TelemetryEvent;

namespace {

constexpr auto kSecond = std::chrono::seconds(1);

FeatureSchema cpu_only() { return FeatureSchema({{"cpu_time_ns", FeatureKind::cumulative, true}}); }

FeatureSchema cpu_mem() {
    return FeatureSchema({{"cpu_time_ns", FeatureKind::cumulative, true}, {"mem_rss_bytes", FeatureKind::gauge, true}});
}

// Four readings inside interval k, i.e. at k + 0.25 .. k + 1.0.
void add_power(std::vector<TelemetryEvent>& ev, int k, std::initializer_list<double> watts) {
    int i = 1;
    for (double w : watts) ev.push_back(power(k + 0.25 * i++, w));
}

const IntervalRecord* find(const IntervalSet& set, std::int64_t index) {
    for (const auto& r : set.intervals)
        if (r.index == index) return &r;
    return nullptr;
}

IntervalRecord record(std::int64_t index, std::vector<std::vector<double>> rows) {
    IntervalRecord r;
    r.index = index;
    r.t_start = telemetry::Timestamp(index * 1'000'000'000LL);
    r.t_end = r.t_start + kSecond;
    r.energy_j = 10.0 * static_cast<double>(index + 1);
    r.power_samples = 4;
    std::int64_t pid = 1;
    for (auto& f : rows) r.rows.push_back({{pid++, 0}, "p", std::move(f), false});
    return r;
}

}  // namespace

TEST(FeatureSchemaTest, DefaultsCoverAllCounters) {
    const auto s = FeatureSchema::defaults();
    EXPECT_EQ(s.enabled_names(),
              (std::vector<std::string>{"cpu_time_ns", "mem_rss_bytes", "disk_read_bytes", "disk_write_bytes",
                                        "net_rx_bytes", "net_tx_bytes", "ctx_switches", "syscalls"}));
    EXPECT_EQ(s.at("mem_rss_bytes").kind, FeatureKind::gauge);
    EXPECT_EQ(s.at("cpu_time_ns").kind, FeatureKind::cumulative);
}

TEST(FeatureSchemaTest, RejectsDuplicatesAndEmptyNames) {
    EXPECT_THROW(FeatureSchema({{"a"}, {"a"}}), ValidationError);
    EXPECT_THROW(FeatureSchema({{""}}), ValidationError);
}

TEST(FeatureSchemaTest, EnableDisable) {
    auto s = cpu_mem();
    s.set_enabled("mem_rss_bytes", false);
    EXPECT_EQ(s.enabled_count(), 1u);
    EXPECT_EQ(s.enabled_names(), std::vector<std::string>{"cpu_time_ns"});
    EXPECT_THROW(s.set_enabled("nope", false), ValidationError);
    s.set_enabled("cpu_time_ns", false);
    EXPECT_THROW(s.validate(), ValidationError);
}

TEST(FeatureSchemaTest, InfersFromSamples) {
    const std::vector<TelemetryEvent> ev{proc(1, 1, {{"ctx_switches", 1}, {"mem_rss_bytes", 2}}), power(1, 1),
                                         proc(2, 1, {{"cpu_time_ns", 1}, {"ctx_switches", 1}})};
    const auto s = FeatureSchema::infer(ev);
    EXPECT_TRUE(s.contains("cpu_time_ns"));
    EXPECT_TRUE(s.contains("ctx_switches"));
    EXPECT_TRUE(s.contains("mem_rss_bytes"));
    EXPECT_EQ(s.features().size(), 3u);
    EXPECT_EQ(s.at("mem_rss_bytes").kind, FeatureKind::gauge);
    EXPECT_TRUE(FeatureSchema::infer(std::vector<TelemetryEvent>{power(1, 1)}).features().empty());
}

TEST(FeatureKindTest, StringRoundTrip) {
    EXPECT_EQ(feature_kind_from_string(to_string(FeatureKind::gauge)), FeatureKind::gauge);
    EXPECT_EQ(feature_kind_from_string(to_string(FeatureKind::cumulative)), FeatureKind::cumulative);
    EXPECT_THROW(feature_kind_from_string("rate"), ValidationError);
}

TEST(IntervalOf, HalfOpenOnTheLeft) {
    const auto P = kSecond;
    EXPECT_EQ(interval_of(fixtures::seconds(0.5), P), 0);
    EXPECT_EQ(interval_of(fixtures::seconds(1.0), P), 0);
    EXPECT_EQ(interval_of(fixtures::seconds(1.000000001), P), 1);
    EXPECT_EQ(interval_of(fixtures::seconds(0), P), -1);
    EXPECT_EQ(interval_of(fixtures::seconds(-0.5), P), -1);
}

TEST(BuildIntervals, CumulativeDelta) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(proc(1, 7, {{"cpu_time_ns", 1'000'000'000}}));
    add_power(ev, 1, {50, 50, 50, 50});
    ev.push_back(proc(2, 7, {{"cpu_time_ns", 1'500'000'000}}));
    const auto set = build_intervals(ev, kSecond, cpu_only());
    ASSERT_EQ(set.intervals.size(), 1u);
    const auto& r = set.intervals[0];
    EXPECT_EQ(r.index, 1);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].features[0], 0.5e9);
    EXPECT_EQ(r.t_end - r.t_start, kSecond);
}

TEST(BuildIntervals, EnergyIsMeanPowerTimesPeriod) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(proc(1, 1, {{"cpu_time_ns", 0}}));
    add_power(ev, 1, {100, 110, 120, 130});
    ev.push_back(proc(2, 1, {{"cpu_time_ns", 1}}));
    const auto set = build_intervals(ev, kSecond, cpu_only());
    ASSERT_EQ(set.intervals.size(), 1u);
    EXPECT_DOUBLE_EQ(set.intervals[0].energy_j, 115.0);
    EXPECT_EQ(set.intervals[0].power_samples, 4u);

    // Two-second intervals double the joules for the same mean watts.
    std::vector<TelemetryEvent> ev2{proc(2, 1, {{"cpu_time_ns", 0}}), power(2.5, 100), power(3, 110),
                                    power(3.5, 120), power(4, 130), proc(4, 1, {{"cpu_time_ns", 1}})};
    const auto set2 = build_intervals(ev2, std::chrono::seconds(2), cpu_only());
    ASSERT_EQ(set2.intervals.size(), 1u);
    EXPECT_DOUBLE_EQ(set2.intervals[0].energy_j, 230.0);
}

TEST(BuildIntervals, LateProcessGetsFirstRowNextInterval) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(proc(1, 1, {{"cpu_time_ns", 0}}));
    add_power(ev, 1, {60, 60, 60, 60});
    ev.push_back(proc(2, 1, {{"cpu_time_ns", 10}}));
    ev.push_back(proc(2, 2, {{"cpu_time_ns", 500}}));  // appears during interval 1
    add_power(ev, 2, {70, 70, 70, 70});
    ev.push_back(proc(3, 1, {{"cpu_time_ns", 30}}));
    ev.push_back(proc(3, 2, {{"cpu_time_ns", 800}}));
    const auto set = build_intervals(ev, kSecond, cpu_only());
    ASSERT_EQ(set.intervals.size(), 2u);
    const auto* i1 = find(set, 1);
    const auto* i2 = find(set, 2);
    ASSERT_TRUE(i1 && i2);
    ASSERT_EQ(i1->rows.size(), 1u);
    EXPECT_EQ(i1->rows[0].key.pid, 1);
    ASSERT_EQ(i2->rows.size(), 2u);
    EXPECT_EQ(i2->rows[0].features[0], 20.0);
    EXPECT_EQ(i2->rows[1].key.pid, 2);
    EXPECT_EQ(i2->rows[1].features[0], 300.0);
}

TEST(BuildIntervals, GaugeCarriesLatestValue) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(proc(1, 1, {{"cpu_time_ns", 0}, {"mem_rss_bytes", 1000}}));
    add_power(ev, 1, {1, 1, 1, 1});
    ev.push_back(proc(2, 1, {{"cpu_time_ns", 5}, {"mem_rss_bytes", 400}}));
    const auto set = build_intervals(ev, kSecond, cpu_mem());
    ASSERT_EQ(set.intervals.size(), 1u);
    EXPECT_EQ(set.intervals[0].rows[0].features, (std::vector<double>{5.0, 400.0}));
    EXPECT_EQ(set.feature_names, (std::vector<std::string>{"cpu_time_ns", "mem_rss_bytes"}));
}

TEST(BuildIntervals, CounterRegressionIsClampedAndFlagged) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(proc(1, 1, {{"cpu_time_ns", 100}}));
    add_power(ev, 1, {1, 1, 1, 1});
    ev.push_back(proc(2, 1, {{"cpu_time_ns", 40}}));
    add_power(ev, 2, {1, 1, 1, 1});
    ev.push_back(proc(3, 1, {{"cpu_time_ns", 90}}));
    const auto set = build_intervals(ev, kSecond, cpu_only());
    ASSERT_EQ(set.intervals.size(), 2u);
    EXPECT_EQ(set.intervals[0].rows[0].features[0], 0.0);
    EXPECT_TRUE(set.intervals[0].rows[0].flagged);
    EXPECT_EQ(set.intervals[1].rows[0].features[0], 50.0);
    EXPECT_FALSE(set.intervals[1].rows[0].flagged);
    EXPECT_EQ(set.report.counter_regressions, 1u);
    EXPECT_EQ(set.report.flagged_rows, 1u);
}

TEST(BuildIntervals, PidReuseStartsFreshIdentity) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(proc(1, 9, {{"cpu_time_ns", 5000}}, "old", 1));
    add_power(ev, 1, {1, 1, 1, 1});
    ev.push_back(proc(2, 9, {{"cpu_time_ns", 10}}, "new", 2));
    add_power(ev, 2, {1, 1, 1, 1});
    ev.push_back(proc(3, 9, {{"cpu_time_ns", 70}}, "new", 2));
    const auto set = build_intervals(ev, kSecond, cpu_only());
    ASSERT_EQ(set.intervals.size(), 2u);
    EXPECT_TRUE(set.intervals[0].rows.empty());
    ASSERT_EQ(set.intervals[1].rows.size(), 1u);
    EXPECT_EQ(set.intervals[1].rows[0].features[0], 60.0);
    EXPECT_EQ(set.report.counter_regressions, 0u);
}

TEST(BuildIntervals, DropsIntervalsWithoutPowerButKeepsIdleOnes) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(proc(1, 1, {{"cpu_time_ns", 0}}));
    add_power(ev, 1, {10, 10, 10, 10});
    // Interval 2: no power at all. Interval 3: power, but no sweep closes it.
    ev.push_back(proc(2, 1, {{"cpu_time_ns", 1}}));
    ev.push_back(proc(3, 1, {{"cpu_time_ns", 2}}));
    add_power(ev, 3, {20, 20, 20, 20});
    ev.push_back(proc(5, 1, {{"cpu_time_ns", 3}}));
    const auto set = build_intervals(ev, kSecond, cpu_only());
    std::vector<std::int64_t> idx;
    for (const auto& r : set.intervals) idx.push_back(r.index);
    EXPECT_EQ(idx, (std::vector<std::int64_t>{1, 3}));
    EXPECT_EQ(set.report.dropped_no_power, 2u);  // intervals 2 and 4
    EXPECT_TRUE(find(set, 3)->rows.empty());
}

TEST(BuildIntervals, EdgesBeforeFirstAndAfterLastSweepAreIncomplete) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(power(0.5, 10));
    ev.push_back(proc(1, 1, {{"cpu_time_ns", 0}}));
    add_power(ev, 1, {10, 10, 10, 10});
    ev.push_back(proc(2, 1, {{"cpu_time_ns", 1}}));
    add_power(ev, 2, {10, 10, 10, 10});
    const auto set = build_intervals(ev, kSecond, cpu_only());
    ASSERT_EQ(set.intervals.size(), 1u);
    EXPECT_EQ(set.intervals[0].index, 1);
    EXPECT_EQ(set.report.dropped_incomplete, 2u);
}

TEST(BuildIntervals, PowerOnlyStreamKeepsEveryPoweredInterval) {
    std::vector<TelemetryEvent> ev;
    add_power(ev, 0, {5, 5, 5, 5});
    add_power(ev, 1, {7, 7, 7, 7});
    const auto set = build_intervals(ev, kSecond, cpu_only());
    ASSERT_EQ(set.intervals.size(), 2u);
    EXPECT_EQ(set.intervals[1].energy_j, 7.0);
}

TEST(BuildIntervals, RejectsMissingCounterAndDisorder) {
    std::vector<TelemetryEvent> missing{proc(1, 1, {{"ctx_switches", 1}})};
    EXPECT_THROW(build_intervals(missing, kSecond, cpu_only()), ValidationError);
    std::vector<TelemetryEvent> disorder{power(2, 1), power(1, 1)};
    EXPECT_THROW(build_intervals(disorder, kSecond, cpu_only()), ValidationError);
    std::vector<TelemetryEvent> negative{power(1, -1)};
    EXPECT_THROW(build_intervals(negative, kSecond, cpu_only()), ValidationError);
    EXPECT_THROW(build_intervals(missing, std::chrono::seconds(0), cpu_only()), ValidationError);
}

TEST(BuildIntervals, StreamAndSpanAgree) {
    std::vector<TelemetryEvent> ev;
    for (int k = 0; k < 6; ++k) {
        ev.push_back(proc(k, 1, {{"cpu_time_ns", k * k * 100}}));
        add_power(ev, k, {1.0 + k, 2.0, 3.0, 4.0});
    }
    telemetry::VectorStream s(ev);
    const auto a = build_intervals(s, kSecond, cpu_only());
    const auto b = build_intervals(ev, kSecond, cpu_only());
    ASSERT_EQ(a.intervals.size(), b.intervals.size());
    for (std::size_t i = 0; i < a.intervals.size(); ++i) {
        EXPECT_EQ(a.intervals[i].energy_j, b.intervals[i].energy_j);
        EXPECT_EQ(a.intervals[i].rows[0].features, b.intervals[i].rows[0].features);
    }
}

TEST(BuildIntervals, DeltaConservationProperty) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> step(0, 1'000'000);
    std::uniform_real_distribution<double> watts(0.0, 300.0);
    const int K = 30;
    const auto alive = [](std::int64_t pid, int k) { return !(pid == 4 && k > 10 && k < 15); };
    for (int trial = 0; trial < 20; ++trial) {
        std::map<std::int64_t, std::vector<std::int64_t>> walk;
        std::vector<TelemetryEvent> ev;
        for (int k = 1; k <= K; ++k) {
            for (std::int64_t pid = 1; pid <= 4; ++pid) {
                if (!alive(pid, k)) continue;
                const std::int64_t c = (walk[pid].empty() ? 0 : walk[pid].back()) + step(rng);
                walk[pid].push_back(c);
                ev.push_back(proc(k, pid, {{"cpu_time_ns", c}}));
            }
            add_power(ev, k, {watts(rng), watts(rng), watts(rng), watts(rng)});
        }
        const auto set = build_intervals(ev, kSecond, cpu_only());
        EXPECT_EQ(set.intervals.size(), static_cast<std::size_t>(K - 1));
        std::map<std::int64_t, double> sum;
        for (const auto& r : set.intervals)
            for (const auto& row : r.rows) sum[row.key.pid] += row.features[0];
        for (std::int64_t pid = 1; pid <= 3; ++pid)
            EXPECT_EQ(sum[pid], static_cast<double>(walk[pid].back() - walk[pid].front()));
        // pid 4 lives through sweeps 1..10 and 15..30; the gap contributes nothing.
        const auto& w4 = walk[4];
        EXPECT_EQ(sum[4], static_cast<double>((w4[9] - w4[0]) + (w4.back() - w4[10])));
    }
}

TEST(StandardizerTest, PopulationStatistics) {
    const std::vector<IntervalRecord> train{record(0, {{1.0}}), record(1, {{3.0}})};
    const auto s = Standardizer::fit(train, {"cpu_time_ns"});
    EXPECT_DOUBLE_EQ(s.mean()[0], 2.0);
    EXPECT_DOUBLE_EQ(s.stddev()[0], 1.0);
    EXPECT_EQ(s.centering(), Centering::scale);
    EXPECT_EQ(s.transform(std::vector<double>{3.0}), std::vector<double>{3.0});
    const auto z = Standardizer::fit(train, {"cpu_time_ns"}, Centering::zscore);
    EXPECT_EQ(z.transform(std::vector<double>{3.0}), std::vector<double>{1.0});
}

TEST(StandardizerTest, SingleRowHasNoUsableFeatures) {
    const std::vector<IntervalRecord> train{record(0, {{5.0, 7.0}})};
    try {
        Standardizer::fit(train, {"a", "b"});
        FAIL() << "expected FitError";
    } catch (const FitError& e) {
        EXPECT_NE(std::string(e.what()).find("no usable features"), std::string::npos);
    }
}

TEST(StandardizerTest, NoRowsIsFitError) {
    const std::vector<IntervalRecord> train{record(0, {}), record(1, {})};
    EXPECT_THROW(Standardizer::fit(train, {"a"}), FitError);
    EXPECT_THROW(Standardizer::fit({}, {"a"}), FitError);
}

TEST(StandardizerTest, ConstantFeatureIsDropped) {
    const std::vector<IntervalRecord> train{record(0, {{1.0, 4.0, 0.0}}), record(1, {{2.0, 4.0, 9.0}})};
    const auto s = Standardizer::fit(train, {"a", "b", "c"});
    EXPECT_EQ(s.input_names(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(s.feature_names(), (std::vector<std::string>{"a", "c"}));
    EXPECT_EQ(s.dropped(), std::vector<std::string>{"b"});
    EXPECT_EQ(s.dimension(), 2u);
    EXPECT_EQ(s.transform(std::vector<double>{1.0, 4.0, 9.0}).size(), 2u);
    EXPECT_THROW(s.transform(std::vector<double>{1.0}), ValidationError);
}

TEST(StandardizerTest, ZscoreMomentsOnThousandRows) {
    std::mt19937_64 rng(3);
    std::gamma_distribution<double> cpu(2.0, 3e8);
    std::normal_distribution<double> mem(5e8, 1e8);
    std::vector<IntervalRecord> train;
    for (int t = 0; t < 250; ++t) {
        std::vector<std::vector<double>> rows;
        for (int r = 0; r < 4; ++r) rows.push_back({cpu(rng), mem(rng)});
        train.push_back(record(t, rows));
    }
    const auto s = Standardizer::fit(train, {"cpu", "mem"}, Centering::zscore);
    double m[2] = {0, 0}, v[2] = {0, 0};
    std::size_t n = 0;
    std::vector<IntervalRecord> standardized;
    for (const auto& rec : train) {
        IntervalRecord out = rec;
        for (auto& row : out.rows) {
            row.features = s.transform(row.features);
            for (int j = 0; j < 2; ++j) m[j] += row.features[static_cast<std::size_t>(j)];
            ++n;
        }
        standardized.push_back(std::move(out));
    }
    for (double& x : m) x /= static_cast<double>(n);
    for (const auto& rec : standardized)
        for (const auto& row : rec.rows)
            for (int j = 0; j < 2; ++j) v[j] += std::pow(row.features[static_cast<std::size_t>(j)] - m[j], 2);
    for (int j = 0; j < 2; ++j) {
        EXPECT_LT(std::abs(m[j]), 1e-9);
        EXPECT_NEAR(v[j] / static_cast<double>(n), 1.0, 1e-9);
    }
    // Refit on standardized rows: already unit, so mu ~ 0 and sigma ~ 1.
    const auto again = Standardizer::fit(standardized, {"cpu", "mem"}, Centering::zscore);
    for (int j = 0; j < 2; ++j) {
        EXPECT_LT(std::abs(again.mean()[static_cast<std::size_t>(j)]), 1e-9);
        EXPECT_NEAR(again.stddev()[static_cast<std::size_t>(j)], 1.0, 1e-9);
    }
}

TEST(StandardizerTest, ScaleModeGivesUnitSpread) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1e6);
    std::vector<IntervalRecord> train;
    for (int t = 0; t < 100; ++t) train.push_back(record(t, {{u(rng)}, {u(rng)}}));
    const auto s = Standardizer::fit(train, {"x"});
    double mean = 0.0, sq = 0.0;
    for (const auto& rec : train)
        for (const auto& row : rec.rows) {
            const double v = s.transform(row.features)[0];
            mean += v;
            sq += v * v;
        }
    mean /= 200.0;
    EXPECT_NEAR(sq / 200.0 - mean * mean, 1.0, 1e-9);
    EXPECT_NEAR(mean, s.mean()[0] / s.stddev()[0], 1e-9);
}

TEST(StandardizerTest, FromStatsRoundTrip) {
    const std::vector<IntervalRecord> train{record(0, {{1.0, 2.0}}), record(1, {{3.0, 2.0}})};
    const auto s = Standardizer::fit(train, {"a", "b"}, Centering::zscore);
    const auto t = Standardizer::from_stats(s.input_names(), s.feature_names(), s.mean(), s.stddev(), s.centering());
    EXPECT_EQ(s, t);
    EXPECT_THROW(Standardizer::from_stats({"a"}, {"a"}, {0.0}, {0.0}, Centering::scale), ValidationError);
}

TEST(CenteringTest, StringRoundTrip) {
    EXPECT_EQ(centering_from_string("scale"), Centering::scale);
    EXPECT_EQ(centering_from_string(to_string(Centering::zscore)), Centering::zscore);
    EXPECT_THROW(centering_from_string("minmax"), ValidationError);
}

TEST(Design, EmptyIntervalIsZeroRow) {
    const std::vector<IntervalRecord> train{record(0, {{1.0, 2.0}, {3.0, 5.0}}), record(1, {})};
    const auto s = Standardizer::fit(train, {"a", "b"});
    const auto d = assemble_design(train, {"a", "b"}, s);
    EXPECT_EQ(d.Z.rows(), 2);
    EXPECT_EQ(d.Z.row(1).norm(), 0.0);
    EXPECT_EQ(d.y(1), 20.0);
    EXPECT_EQ(d.row_offsets, (std::vector<std::size_t>{0, 2, 2}));
}

TEST(Design, RowSumIsElementwise) {
    const std::vector<IntervalRecord> train{record(0, {{1.0, 2.0}, {3.0, 5.0}}), record(1, {{4.0, 1.0}})};
    const auto s = Standardizer::fit(train, {"a", "b"});
    const auto d = assemble_design(train, {"a", "b"}, s);
    const auto x1 = s.transform(train[0].rows[0].features);
    const auto x2 = s.transform(train[0].rows[1].features);
    EXPECT_EQ(d.Z(0, 0), x1[0] + x2[0]);
    EXPECT_EQ(d.Z(0, 1), x1[1] + x2[1]);
    ASSERT_EQ(d.row_refs.size(), 3u);
    EXPECT_EQ(d.row_refs[2].interval, 1u);
    EXPECT_EQ(d.rows(2, 0), s.transform(train[1].rows[0].features)[0]);
}

TEST(Design, RandomResummationOracle) {
    std::mt19937_64 rng(50);
    std::uniform_int_distribution<int> count(0, 6);
    std::lognormal_distribution<double> val(10.0, 2.0);
    std::vector<IntervalRecord> set;
    for (int t = 0; t < 50; ++t) {
        std::vector<std::vector<double>> rows;
        const int n = count(rng);
        for (int r = 0; r < n; ++r) rows.push_back({val(rng), val(rng), val(rng)});
        set.push_back(record(t, rows));
    }
    const std::vector<std::string> names{"a", "b", "c"};
    for (Centering c : {Centering::scale, Centering::zscore}) {
        const auto s = Standardizer::fit(set, names, c);
        const auto d = assemble_design(set, names, s);
        double worst = 0.0;
        for (std::size_t t = 0; t < set.size(); ++t) {
            for (std::size_t j = 0; j < 3; ++j) {
                // Hand arithmetic, not transform(): (x - mu) / sigma, mu = 0 in scale mode.
                double acc = 0.0;
                for (const auto& row : set[t].rows)
                    acc += (row.features[j] - (c == Centering::zscore ? s.mean()[j] : 0.0)) / s.stddev()[j];
                worst = std::max(worst, std::abs(acc - d.Z(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j))));
            }
        }
        EXPECT_LT(worst, 1e-12);
    }
}

TEST(Design, SchemaMismatchIsReported) {
    const std::vector<IntervalRecord> train{record(0, {{1.0, 2.0}}), record(1, {{3.0, 5.0}})};
    const auto s = Standardizer::fit(train, {"a", "b"});
    try {
        assemble_design(train, {"a", "c"}, s);
        FAIL() << "expected SchemaMismatchError";
    } catch (const SchemaMismatchError& e) {
        const std::string diff = e.diff();
        EXPECT_NE(diff.find("- b"), std::string::npos);
        EXPECT_NE(diff.find("+ c"), std::string::npos);
    }
}

TEST(IntervalCsv, Layout) {
    std::vector<TelemetryEvent> ev;
    ev.push_back(proc(1, 3, {{"cpu_time_ns", 0}, {"mem_rss_bytes", 8}}, "a,b"));
    add_power(ev, 1, {100, 110, 120, 130});
    ev.push_back(proc(2, 3, {{"cpu_time_ns", 5}, {"mem_rss_bytes", 9}}, "a,b"));
    const auto set = build_intervals(ev, kSecond, cpu_mem());
    std::ostringstream rows, summary;
    write_interval_rows_csv(set, rows);
    write_interval_summary_csv(set, summary);
    EXPECT_EQ(rows.str(),
              "t,t_start_ns,t_end_ns,energy_j,pid,start_id,name,cpu_time_ns,mem_rss_bytes\n"
              "1,1000000000,2000000000,115,3,0,\"a,b\",5,9\n");
    EXPECT_EQ(summary.str(),
              "t,t_start_ns,t_end_ns,energy_j,power_samples,rows,flagged_rows\n"
              "1,1000000000,2000000000,115,4,1,0\n");
}
