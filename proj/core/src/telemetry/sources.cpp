#include "wattribute/telemetry/sources.hpp"

#include <cmath>
#include <random>

#include "wattribute/error.hpp"

namespace wattribute::telemetry {

namespace {

constexpr int kSyntheticProcesses = 3;
constexpr int kPhaseLength = 5;  // periods between rate changes

std::vector<TelemetryEvent> synthetic_events(const SourceConfig& cfg) {
    const std::int64_t period = cfg.sample_period.count();
    const std::int64_t sweeps = cfg.duration.count() / period;
    const auto readings = static_cast<std::int64_t>(std::floor(cfg.duration.count() * 1e-9 * cfg.power_hz));
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.5);

    // Per-sweep CPU share of each process, piecewise constant over kPhaseLength periods.
    std::vector<std::vector<double>> load(kSyntheticProcesses, std::vector<double>(sweeps, 0.0));
    for (auto& series : load) {
        double level = 0.0;
        for (std::int64_t k = 0; k < sweeps; ++k) {
            if (k % kPhaseLength == 0) level = unit(rng) < 0.3 ? 0.0 : unit(rng);
            series[k] = level;
        }
    }

    std::vector<TelemetryEvent> procs;
    std::vector<double> cpu_ns(kSyntheticProcesses, 0.0);
    for (std::int64_t k = 0; k < sweeps; ++k) {
        for (int r = 0; r < kSyntheticProcesses; ++r) {
            cpu_ns[r] += load[r][k] * static_cast<double>(period);
            const auto cpu = static_cast<std::int64_t>(cpu_ns[r]);
            ProcessSample s;
            s.timestamp = Timestamp((k + 1) * period);
            s.key = {100 + r, 0};
            s.name = "synthetic-" + std::string(1, static_cast<char>('a' + r));
            s.counters = {{"cpu_time_ns", cpu},
                          {"mem_rss_bytes", (64 + 16 * r) << 20},
                          {"disk_read_bytes", cpu / 1000},
                          {"disk_write_bytes", cpu / 4000},
                          {"net_rx_bytes", 0},
                          {"net_tx_bytes", 0},
                          {"ctx_switches", cpu / 1'000'000},
                          {"syscalls", cpu / 100'000}};
            procs.emplace_back(std::move(s));
        }
    }

    std::vector<TelemetryEvent> power;
    for (std::int64_t j = 1; j <= readings; ++j) {
        const auto t = static_cast<std::int64_t>(std::llround(static_cast<double>(j) * 1e9 / cfg.power_hz));
        const std::int64_t k = std::min<std::int64_t>((t - 1) / period, std::max<std::int64_t>(sweeps - 1, 0));
        double watts = 40.0;
        for (int r = 0; r < kSyntheticProcesses && sweeps > 0; ++r) watts += 30.0 * load[r][k];
        power.emplace_back(PowerReading{Timestamp(t), std::max(0.0, watts + noise(rng))});
    }
    return merge_ordered(std::move(power), std::move(procs));
}

}  // namespace

SyntheticStream::SyntheticStream(const SourceConfig& cfg) : events_((cfg.validate(), synthetic_events(cfg))) {}

std::optional<TelemetryEvent> SyntheticStream::next() { return events_.next(); }

LiveStream::LiveStream(PowerEndpoint endpoint, std::unique_ptr<ProcessSampler> sampler, const SourceConfig& cfg)
    : epoch_(std::chrono::steady_clock::now()),
      period_(cfg.sample_period),
      duration_(cfg.duration),
      sampler_(std::move(sampler)),
      poller_(endpoint, cfg.power_hz, epoch_) {
    cfg.validate();
    try {
        (void)poll_power(endpoint, epoch_);
    } catch (const FetchError& e) {
        throw SourceError(std::string("power endpoint unavailable: ") + e.what(), e.retryable());
    }
    poller_.start([this](const PowerReading& r) { push(power, r); },
                  [this](Timestamp t) { advance(power, t); });
    sampler_thread_ = std::thread([this] { run_sampler(); });
}

LiveStream::~LiveStream() { stop(); }

void LiveStream::stop() {
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
    }
    cv_.notify_all();
    poller_.stop();
    if (sampler_thread_.joinable()) sampler_thread_.join();
    std::lock_guard lock(mu_);
    done_[power] = done_[process] = true;
    cv_.notify_all();
}

void LiveStream::push(Producer from, TelemetryEvent event) {
    {
        std::lock_guard lock(mu_);
        if (done_[from]) return;
        watermarks_[from] = std::max(watermarks_[from], timestamp_of(event));
        queues_[from].push_back(std::move(event));
    }
    cv_.notify_all();
}

void LiveStream::advance(Producer from, Timestamp watermark) {
    {
        std::lock_guard lock(mu_);
        watermarks_[from] = std::max(watermarks_[from], watermark);
        if (duration_.count() > 0 && watermark >= duration_) done_[from] = true;
    }
    cv_.notify_all();
}

void LiveStream::run_sampler() {
    for (std::int64_t k = 1;; ++k) {
        {
            std::unique_lock lock(mu_);
            if (cv_.wait_until(lock, epoch_ + k * period_, [this] { return stopping_; })) break;
        }
        const auto now = std::chrono::duration_cast<Timestamp>(std::chrono::steady_clock::now() - epoch_);
        for (auto& sample : sampler_->sweep(now)) push(process, std::move(sample));
        advance(process, now);
        if (duration_.count() > 0 && now >= duration_) break;
    }
    std::lock_guard lock(mu_);
    done_[process] = true;
    cv_.notify_all();
}

std::optional<TelemetryEvent> LiveStream::next() {
    std::unique_lock lock(mu_);
    for (;;) {
        int pick = -1;
        for (int i = 0; i < 2; ++i) {
            if (queues_[i].empty()) continue;
            if (pick < 0 || timestamp_of(queues_[i].front()) < timestamp_of(queues_[pick].front())) pick = i;
        }
        if (pick >= 0) {
            const int other = 1 - pick;
            const Timestamp t = timestamp_of(queues_[pick].front());
            if (!queues_[other].empty() || done_[other] || watermarks_[other] >= t) {
                TelemetryEvent e = std::move(queues_[pick].front());
                queues_[pick].pop_front();
                return e;
            }
        } else if ((done_[power] && done_[process]) || stopping_) {
            return std::nullopt;
        }
        cv_.wait(lock);
    }
}

}  // namespace wattribute::telemetry
