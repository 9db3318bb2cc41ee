#include "wattribute/telemetry/stream.hpp"

#include <algorithm>

#include "wattribute/error.hpp"
#include "wattribute/telemetry/sources.hpp"
#include "wattribute/telemetry/trace.hpp"

namespace wattribute::telemetry {

VectorStream::VectorStream(std::vector<TelemetryEvent> events) : events_(std::move(events)) {}

std::optional<TelemetryEvent> VectorStream::next() {
    if (pos_ >= events_.size()) return std::nullopt;
    return events_[pos_++];
}

std::unique_ptr<TelemetryStream> open_source(const SourceConfig& cfg) {
    cfg.validate();
    switch (cfg.kind) {
        case SourceKind::replay:
            return std::make_unique<ReplayStream>(cfg.trace_path);
        case SourceKind::synthetic:
            return std::make_unique<SyntheticStream>(cfg);
        case SourceKind::live:
            return std::make_unique<LiveStream>(PowerEndpoint::resolve(cfg.power_endpoint, cfg.bearer_token),
                                                std::make_unique<ProcfsSampler>(), cfg);
    }
    throw ValidationError("unknown source kind");
}

std::vector<TelemetryEvent> collect(TelemetryStream& stream) {
    std::vector<TelemetryEvent> out;
    while (auto e = stream.next()) out.push_back(std::move(*e));
    return out;
}

std::vector<TelemetryEvent> merge_ordered(std::vector<TelemetryEvent> a, std::vector<TelemetryEvent> b) {
    std::vector<TelemetryEvent> out;
    out.reserve(a.size() + b.size());
    std::merge(std::make_move_iterator(a.begin()), std::make_move_iterator(a.end()),
               std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()), std::back_inserter(out),
               [](const TelemetryEvent& x, const TelemetryEvent& y) { return timestamp_of(x) < timestamp_of(y); });
    return out;
}

}  // namespace wattribute::telemetry
