#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wattribute/telemetry/types.hpp"

namespace wattribute::aggregation {

/// Cumulative counters are differenced per interval; gauges are carried as-is.
enum class FeatureKind { cumulative, gauge };

std::string_view to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(std::string_view text);

/// mem_rss_bytes is the only built-in gauge; everything else is cumulative.
FeatureKind default_kind(std::string_view name);

struct Feature {
    std::string name;
    FeatureKind kind = FeatureKind::cumulative;
    bool enabled = true;

    bool operator==(const Feature&) const = default;
};

/// Ordered feature list. Names are unique; validate() also demands one enabled feature.
class FeatureSchema {
public:
    FeatureSchema() = default;
    explicit FeatureSchema(std::vector<Feature> features);

    /// cpu_time_ns, mem_rss_bytes, disk_read_bytes, disk_write_bytes,
    /// net_rx_bytes, net_tx_bytes, ctx_switches, syscalls.
    static FeatureSchema defaults();

    /// Every counter name seen in the events, in first-seen order, with default kinds.
    static FeatureSchema infer(std::span<const telemetry::TelemetryEvent> events);

    const std::vector<Feature>& features() const noexcept { return features_; }
    std::vector<std::string> enabled_names() const;
    std::vector<FeatureKind> enabled_kinds() const;
    std::size_t enabled_count() const;

    bool contains(std::string_view name) const;
    const Feature& at(std::string_view name) const;
    void set_enabled(std::string_view name, bool enabled);

    void validate() const;

    bool operator==(const FeatureSchema&) const = default;

private:
    std::vector<Feature> features_;
};

}  // namespace wattribute::aggregation
