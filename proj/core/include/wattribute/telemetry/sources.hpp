#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <thread>

#include "wattribute/telemetry/power_poller.hpp"
#include "wattribute/telemetry/process_sampler.hpp"
#include "wattribute/telemetry/stream.hpp"

namespace wattribute::telemetry {

/// Deterministic built-in feed: `duration / sample_period` sweeps of a few
/// processes (at the end of each period) and power_hz readings per period.
class SyntheticStream final : public TelemetryStream {
public:
    explicit SyntheticStream(const SourceConfig& cfg);

    std::optional<TelemetryEvent> next() override;

private:
    VectorStream events_;
};

/// Live capture: a power poller and a process sampler run as independent producers;
/// next() releases the earliest pending event once the other producer's watermark
/// has passed it, so consumers see non-decreasing timestamps.
class LiveStream final : public TelemetryStream {
public:
    LiveStream(PowerEndpoint endpoint, std::unique_ptr<ProcessSampler> sampler, const SourceConfig& cfg);
    ~LiveStream() override;

    std::optional<TelemetryEvent> next() override;
    void stop();

    const PowerPoller& poller() const noexcept { return poller_; }

private:
    enum Producer { power = 0, process = 1 };

    void push(Producer from, TelemetryEvent event);
    void advance(Producer from, Timestamp watermark);
    void run_sampler();

    std::chrono::steady_clock::time_point epoch_;
    std::chrono::nanoseconds period_;
    std::chrono::nanoseconds duration_;
    std::unique_ptr<ProcessSampler> sampler_;
    PowerPoller poller_;

    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<TelemetryEvent> queues_[2];
    Timestamp watermarks_[2]{Timestamp::min(), Timestamp::min()};
    bool done_[2]{false, false};
    bool stopping_ = false;
    std::thread sampler_thread_;
};

}  // namespace wattribute::telemetry
