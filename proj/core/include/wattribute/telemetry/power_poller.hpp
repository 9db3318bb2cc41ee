#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <thread>

#include "wattribute/telemetry/types.hpp"

namespace wattribute::telemetry {

/// Generic power endpoint: HTTP GET returning {"power_w": <float>}.
struct PowerEndpoint {
    std::string url;
    std::optional<std::string> bearer_token;
    std::chrono::milliseconds timeout{200};

    /// url from argument, else WATTRIBUTE_POWER_URL. Throws ConfigError if neither is set.
    static PowerEndpoint resolve(const std::string& url, std::optional<std::string> token = std::nullopt);
};

/// Parses a {"power_w": ...} body. Throws FetchError(body) or FetchError(validation).
double parse_power_body(const std::string& body);

/// One request. The reading is stamped at receive time relative to `epoch`.
/// Throws FetchError; the caller decides on retries.
PowerReading poll_power(const PowerEndpoint& endpoint,
                        std::chrono::steady_clock::time_point epoch = std::chrono::steady_clock::now());

/// Background poller on an absolute tick schedule (epoch + n / hz). Ticks that are
/// missed because a request overran are skipped, never back-filled.
class PowerPoller {
public:
    using ReadingSink = std::function<void(const PowerReading&)>;
    using TickSink = std::function<void(Timestamp)>;

    PowerPoller(PowerEndpoint endpoint, double hz, std::chrono::steady_clock::time_point epoch);
    ~PowerPoller();

    PowerPoller(const PowerPoller&) = delete;
    PowerPoller& operator=(const PowerPoller&) = delete;

    /// on_reading gets successful readings; on_tick fires after every attempt with
    /// the attempt's timestamp (used as a watermark by the live merger).
    void start(ReadingSink on_reading, TickSink on_tick = {});
    void stop();

    std::size_t requests() const noexcept { return requests_.load(); }
    std::size_t failures() const noexcept { return failures_.load(); }
    std::size_t skipped_ticks() const noexcept { return skipped_.load(); }

private:
    void run(ReadingSink on_reading, TickSink on_tick);

    PowerEndpoint endpoint_;
    std::chrono::nanoseconds tick_;
    std::chrono::steady_clock::time_point epoch_;
    std::atomic<bool> running_{false};
    std::atomic<std::size_t> requests_{0};
    std::atomic<std::size_t> failures_{0};
    std::atomic<std::size_t> skipped_{0};
    std::thread worker_;
};

}  // namespace wattribute::telemetry
