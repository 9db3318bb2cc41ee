#include "wattribute/aggregation/feature_schema.hpp"

#include <algorithm>
#include <set>

#include "wattribute/error.hpp"

namespace wattribute::aggregation {

std::string_view to_string(FeatureKind kind) { return kind == FeatureKind::gauge ? "gauge" : "cumulative"; }

FeatureKind feature_kind_from_string(std::string_view text) {
    if (text == "gauge") return FeatureKind::gauge;
    if (text == "cumulative") return FeatureKind::cumulative;
    throw ValidationError("unknown feature kind '" + std::string(text) + "'");
}

FeatureKind default_kind(std::string_view name) {
    return name == "mem_rss_bytes" ? FeatureKind::gauge : FeatureKind::cumulative;
}

FeatureSchema::FeatureSchema(std::vector<Feature> features) : features_(std::move(features)) {
    std::set<std::string_view> seen;
    for (const auto& f : features_) {
        if (f.name.empty()) throw ValidationError("feature names must be non-empty");
        if (!seen.insert(f.name).second) throw ValidationError("duplicate feature '" + f.name + "'");
    }
}

FeatureSchema FeatureSchema::defaults() {
    std::vector<Feature> f;
    for (const char* name : {"cpu_time_ns", "mem_rss_bytes", "disk_read_bytes", "disk_write_bytes", "net_rx_bytes",
                             "net_tx_bytes", "ctx_switches", "syscalls"}) {
        f.push_back({name, default_kind(name), true});
    }
    return FeatureSchema(std::move(f));
}

FeatureSchema FeatureSchema::infer(std::span<const telemetry::TelemetryEvent> events) {
    std::vector<Feature> f;
    std::set<std::string, std::less<>> seen;
    for (const auto& e : events) {
        const auto* s = std::get_if<telemetry::ProcessSample>(&e);
        if (!s) continue;
        for (const auto& [name, value] : s->counters) {
            if (seen.insert(name).second) f.push_back({name, default_kind(name), true});
        }
    }
    return FeatureSchema(std::move(f));
}

std::vector<std::string> FeatureSchema::enabled_names() const {
    std::vector<std::string> out;
    for (const auto& f : features_)
        if (f.enabled) out.push_back(f.name);
    return out;
}

std::vector<FeatureKind> FeatureSchema::enabled_kinds() const {
    std::vector<FeatureKind> out;
    for (const auto& f : features_)
        if (f.enabled) out.push_back(f.kind);
    return out;
}

std::size_t FeatureSchema::enabled_count() const {
    return static_cast<std::size_t>(std::count_if(features_.begin(), features_.end(), [](const auto& f) { return f.enabled; }));
}

bool FeatureSchema::contains(std::string_view name) const {
    return std::any_of(features_.begin(), features_.end(), [&](const auto& f) { return f.name == name; });
}

const Feature& FeatureSchema::at(std::string_view name) const {
    for (const auto& f : features_)
        if (f.name == name) return f;
    throw ValidationError("unknown feature '" + std::string(name) + "'");
}

void FeatureSchema::set_enabled(std::string_view name, bool enabled) {
    for (auto& f : features_) {
        if (f.name == name) {
            f.enabled = enabled;
            return;
        }
    }
    throw ValidationError("unknown feature '" + std::string(name) + "'");
}

void FeatureSchema::validate() const {
    if (enabled_count() == 0) throw ValidationError("feature schema has no enabled features");
}

}  // namespace wattribute::aggregation
