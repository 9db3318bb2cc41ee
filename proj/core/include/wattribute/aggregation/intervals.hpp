#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wattribute/aggregation/feature_schema.hpp"
#include "wattribute/telemetry/stream.hpp"

namespace wattribute::aggregation {

/// One process in one interval. Presence of a row is the assignment A_tr = 1.
struct ProcessRow {
    telemetry::ProcessKey key;
    std::string name;
    std::vector<double> features;  // aligned with IntervalSet::feature_names
    bool flagged = false;          // a counter went backwards and was clamped
};

/// Interval (t_start, t_end]: events with t_start < t <= t_end belong to it.
struct IntervalRecord {
    std::int64_t index = 0;  // grid position, t_start = index * period
    telemetry::Timestamp t_start{0};
    telemetry::Timestamp t_end{0};
    double energy_j = 0.0;  // mean watts * period seconds
    std::size_t power_samples = 0;
    std::vector<ProcessRow> rows;  // sorted by key
};

struct BuildReport {
    std::size_t dropped_no_power = 0;
    std::size_t dropped_incomplete = 0;  // before the second sweep or after the last
    std::size_t counter_regressions = 0;
    std::size_t flagged_rows = 0;
};

struct IntervalSet {
    FeatureSchema schema;
    std::vector<std::string> feature_names;  // enabled features of schema, in order
    std::chrono::nanoseconds period{0};
    std::vector<IntervalRecord> intervals;
    BuildReport report;
};

/// Grid index of the interval that owns timestamp t.
std::int64_t interval_of(telemetry::Timestamp t, std::chrono::nanoseconds period);

/// Aligns an ordered event stream into fixed intervals.
///
/// A process contributes a row to interval k only when it was sampled in both k-1
/// and k; cumulative features become the difference of the two closing snapshots
/// and gauges take the closing value. Intervals without power readings are dropped.
/// When the stream contains process samples, intervals up to and including the
/// first sweep and after the last sweep are dropped as incomplete.
///
/// Throws ValidationError when events are out of order or a sample lacks an
/// enabled counter.
IntervalSet build_intervals(telemetry::TelemetryStream& stream, std::chrono::nanoseconds period,
                            const FeatureSchema& schema);
IntervalSet build_intervals(std::span<const telemetry::TelemetryEvent> events, std::chrono::nanoseconds period,
                            const FeatureSchema& schema);

}  // namespace wattribute::aggregation
