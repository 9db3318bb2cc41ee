#include "wattribute/aggregation/intervals.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "wattribute/error.hpp"

namespace wattribute::aggregation {

namespace {

using telemetry::ProcessKey;
using telemetry::ProcessSample;
using telemetry::Timestamp;

struct Snapshot {
    std::int64_t interval = 0;
    std::string name;
    std::vector<std::int64_t> counters;
};

struct PendingInterval {
    double watt_sum = 0.0;
    std::size_t power_samples = 0;
    std::vector<ProcessRow> rows;
};

class Builder {
public:
    Builder(std::chrono::nanoseconds period, const FeatureSchema& schema) : period_(period) {
        if (period <= std::chrono::nanoseconds::zero()) throw ValidationError("interval period must be > 0");
        schema.validate();
        set_.schema = schema;
        set_.feature_names = schema.enabled_names();
        set_.period = period;
        kinds_ = schema.enabled_kinds();
    }

    void add(const telemetry::TelemetryEvent& event) {
        const Timestamp t = telemetry::timestamp_of(event);
        if (last_t_ && t < *last_t_) throw ValidationError("telemetry events are not timestamp-ordered");
        last_t_ = t;
        const std::int64_t k = interval_of(t, period_);
        if (!current_) current_ = first_ = k;
        while (*current_ < k) close_current();

        if (const auto* p = std::get_if<telemetry::PowerReading>(&event)) {
            telemetry::validate(*p);
            pending_.watt_sum += p->watts;
            ++pending_.power_samples;
        } else {
            const auto& s = std::get<ProcessSample>(event);
            if (!first_sweep_) first_sweep_ = k;
            last_sweep_ = k;
            seen_[s.key] = extract(s, k);
        }
    }

    IntervalSet finish() {
        if (current_) close_current();
        for (auto& rec : closed_) {
            const bool incomplete = first_sweep_ && (rec.index <= *first_sweep_ || rec.index > *last_sweep_);
            if (incomplete) {
                ++set_.report.dropped_incomplete;
            } else if (rec.power_samples == 0) {
                ++set_.report.dropped_no_power;
            } else {
                set_.report.flagged_rows +=
                    static_cast<std::size_t>(std::count_if(rec.rows.begin(), rec.rows.end(), [](const auto& r) { return r.flagged; }));
                set_.intervals.push_back(std::move(rec));
            }
        }
        return std::move(set_);
    }

private:
    Snapshot extract(const ProcessSample& s, std::int64_t k) const {
        Snapshot snap{k, s.name, {}};
        snap.counters.reserve(set_.feature_names.size());
        for (const auto& name : set_.feature_names) {
            auto it = s.counters.find(name);
            if (it == s.counters.end()) {
                throw ValidationError("sample of pid " + std::to_string(s.key.pid) + " at t=" +
                                      std::to_string(s.timestamp.count()) + " lacks counter '" + name + "'");
            }
            snap.counters.push_back(it->second);
        }
        return snap;
    }

    // Turns the samples seen in the current interval into rows and advances the grid.
    void close_current() {
        const std::int64_t k = *current_;
        for (auto& [key, snap] : seen_) {
            auto prev = closing_.find(key);
            if (prev != closing_.end() && prev->second.interval == k - 1) {
                ProcessRow row{key, snap.name, std::vector<double>(kinds_.size()), false};
                for (std::size_t j = 0; j < kinds_.size(); ++j) {
                    if (kinds_[j] == FeatureKind::gauge) {
                        row.features[j] = static_cast<double>(snap.counters[j]);
                        continue;
                    }
                    const std::int64_t delta = snap.counters[j] - prev->second.counters[j];
                    if (delta < 0) {
                        ++set_.report.counter_regressions;
                        row.flagged = true;
                    } else {
                        row.features[j] = static_cast<double>(delta);
                    }
                }
                pending_.rows.push_back(std::move(row));
            }
            closing_[key] = std::move(snap);
        }
        seen_.clear();

        IntervalRecord rec;
        rec.index = k;
        rec.t_start = Timestamp(k * period_.count());
        rec.t_end = rec.t_start + period_;
        rec.power_samples = pending_.power_samples;
        if (pending_.power_samples > 0) {
            rec.energy_j = pending_.watt_sum / static_cast<double>(pending_.power_samples) *
                           std::chrono::duration<double>(period_).count();
        }
        rec.rows = std::move(pending_.rows);
        closed_.push_back(std::move(rec));
        pending_ = {};
        current_ = k + 1;
    }

    std::chrono::nanoseconds period_;
    std::vector<FeatureKind> kinds_;
    IntervalSet set_;
    std::optional<Timestamp> last_t_;
    std::optional<std::int64_t> current_, first_;
    std::optional<std::int64_t> first_sweep_, last_sweep_;
    PendingInterval pending_;
    std::map<ProcessKey, Snapshot> seen_;     // latest sample per process in the current interval
    std::map<ProcessKey, Snapshot> closing_;  // last closing snapshot per process
    std::vector<IntervalRecord> closed_;
};

}  // namespace

std::int64_t interval_of(Timestamp t, std::chrono::nanoseconds period) {
    // Owner of t is k with k*P < t <= (k+1)*P, i.e. ceil(t/P) - 1.
    const std::int64_t p = period.count();
    const std::int64_t q = t.count() / p;
    const std::int64_t r = t.count() % p;
    const std::int64_t ceil = (r > 0) ? q + 1 : q;
    return ceil - 1;
}

IntervalSet build_intervals(telemetry::TelemetryStream& stream, std::chrono::nanoseconds period,
                            const FeatureSchema& schema) {
    Builder b(period, schema);
    while (auto e = stream.next()) b.add(*e);
    return b.finish();
}

IntervalSet build_intervals(std::span<const telemetry::TelemetryEvent> events, std::chrono::nanoseconds period,
                            const FeatureSchema& schema) {
    Builder b(period, schema);
    for (const auto& e : events) b.add(e);
    return b.finish();
}

}  // namespace wattribute::aggregation
