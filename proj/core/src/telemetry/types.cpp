#include "wattribute/telemetry/types.hpp"

#include <cmath>

#include "wattribute/error.hpp"

namespace wattribute::telemetry {

Timestamp timestamp_of(const TelemetryEvent& event) {
    return std::visit([](const auto& e) { return e.timestamp; }, event);
}

void validate(const PowerReading& reading) {
    if (!std::isfinite(reading.watts)) throw ValidationError("power reading is not finite");
    if (reading.watts < 0.0) throw ValidationError("negative power reading: " + std::to_string(reading.watts));
}

void SourceConfig::validate() const {
    if (!(power_hz >= 1.0) || !std::isfinite(power_hz)) throw ValidationError("power_hz must be >= 1");
    if (sample_period <= std::chrono::nanoseconds::zero()) throw ValidationError("sample_period must be > 0");
    if (duration < std::chrono::nanoseconds::zero()) throw ValidationError("duration must be >= 0");
    if (kind == SourceKind::replay && trace_path.empty()) throw ValidationError("replay source needs trace_path");
}

}  // namespace wattribute::telemetry
