#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace wattribute::telemetry {

/// Monotonic time since the capture epoch.
using Timestamp = std::chrono::nanoseconds;

/// Process identity that survives PID reuse: start_id is the process start time.
struct ProcessKey {
    std::int64_t pid = 0;
    std::int64_t start_id = 0;

    auto operator<=>(const ProcessKey&) const = default;
};

/// Snapshot of one process's counters. Cumulative counters never decrease within
/// a ProcessKey; mem_rss_bytes is a gauge.
struct ProcessSample {
    Timestamp timestamp{0};
    ProcessKey key;
    std::string name;
    std::map<std::string, std::int64_t> counters;

    bool operator==(const ProcessSample&) const = default;
};

/// Instantaneous node power.
struct PowerReading {
    Timestamp timestamp{0};
    double watts = 0.0;

    bool operator==(const PowerReading&) const = default;
};

using TelemetryEvent = std::variant<ProcessSample, PowerReading>;

Timestamp timestamp_of(const TelemetryEvent& event);

/// Throws ValidationError when watts is negative or non-finite.
void validate(const PowerReading& reading);

enum class SourceKind { live, replay, synthetic };

struct SourceConfig {
    SourceKind kind = SourceKind::replay;
    std::string power_endpoint;            // live only; falls back to WATTRIBUTE_POWER_URL
    std::optional<std::string> bearer_token;
    double power_hz = 4.0;
    std::chrono::nanoseconds sample_period = std::chrono::seconds(1);
    std::string trace_path;                // replay only
    std::chrono::nanoseconds duration{0};  // synthetic length; live stops after it when > 0
    std::uint64_t seed = 1;                // synthetic only

    /// Throws ValidationError on power_hz < 1 or non-positive sample_period.
    void validate() const;
};

/// Environment variable consulted when no power endpoint is configured.
inline constexpr const char* kPowerUrlEnv = "WATTRIBUTE_POWER_URL";

}  // namespace wattribute::telemetry
