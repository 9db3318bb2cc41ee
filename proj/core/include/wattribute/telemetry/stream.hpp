#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wattribute/telemetry/types.hpp"

namespace wattribute::telemetry {

/// Ordered, single-consumer stream of telemetry events. Timestamps are non-decreasing.
class TelemetryStream {
public:
    virtual ~TelemetryStream() = default;

    /// Next event, or nullopt once the stream is exhausted.
    virtual std::optional<TelemetryEvent> next() = 0;
};

/// Stream over an in-memory, already ordered event sequence.
class VectorStream final : public TelemetryStream {
public:
    explicit VectorStream(std::vector<TelemetryEvent> events);

    std::optional<TelemetryEvent> next() override;

private:
    std::vector<TelemetryEvent> events_;
    std::size_t pos_ = 0;
};

/// Opens a source described by cfg. Replay parses lazily and throws ParseError at
/// the offending line; live throws a retryable SourceError when the power endpoint
/// cannot be reached.
std::unique_ptr<TelemetryStream> open_source(const SourceConfig& cfg);

/// Drains a stream into a vector.
std::vector<TelemetryEvent> collect(TelemetryStream& stream);

/// Stable merge of two ordered sequences by timestamp (ties keep `a` first).
std::vector<TelemetryEvent> merge_ordered(std::vector<TelemetryEvent> a, std::vector<TelemetryEvent> b);

}  // namespace wattribute::telemetry
