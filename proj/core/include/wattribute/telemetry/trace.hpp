#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "wattribute/telemetry/stream.hpp"

namespace wattribute::telemetry {

// JSON-lines trace. First line is the header, then one event per line:
//   {"format":"wattribute-trace","version":1}
//   {"t":<ns>,"kind":"proc","pid":..,"start_id":..,"name":"..","counters":{..}}
//   {"t":<ns>,"kind":"power","watts":<float>}

inline constexpr std::string_view kTraceFormat = "wattribute-trace";
inline constexpr int kTraceVersion = 1;

std::string trace_header_line();
std::string to_trace_line(const TelemetryEvent& event);

/// Parses one event line. Throws ParseError tagged with `line_no`.
TelemetryEvent parse_trace_line(std::string_view text, std::size_t line_no);

/// Lazy replay. Checks the header, global timestamp order, per-process strictly
/// increasing timestamps and power validity as lines are consumed.
class ReplayStream final : public TelemetryStream {
public:
    explicit ReplayStream(const std::filesystem::path& path);

    std::optional<TelemetryEvent> next() override;

    std::size_t line() const noexcept { return line_no_; }

private:
    std::ifstream in_;
    std::size_t line_no_ = 0;
    bool header_seen_ = false;
    Timestamp last_t_{std::numeric_limits<Timestamp::rep>::min()};
    std::map<ProcessKey, Timestamp> last_seen_;
};

/// Streaming writer. The header goes out on construction.
class TraceWriter {
public:
    explicit TraceWriter(const std::filesystem::path& path);

    void write(const TelemetryEvent& event);
    void close();

    std::size_t written() const noexcept { return written_; }

private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::size_t written_ = 0;
};

/// Writes header plus one line per event; returns the event count.
/// Throws WriteError carrying the partial count on I/O failure.
std::size_t write_trace(std::span<const TelemetryEvent> events, const std::filesystem::path& path);

}  // namespace wattribute::telemetry
