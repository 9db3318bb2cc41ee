#include "wattribute/telemetry/power_poller.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "wattribute/error.hpp"

namespace wattribute::telemetry {

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    constexpr std::string_view scheme = "http://";
    if (url.rfind(scheme, 0) != 0) throw ConfigError("power endpoint must be an http:// URL: " + url);
    const auto slash = url.find('/', scheme.size());
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

PowerEndpoint PowerEndpoint::resolve(const std::string& url, std::optional<std::string> token) {
    PowerEndpoint ep;
    ep.bearer_token = std::move(token);
    if (!url.empty()) {
        ep.url = url;
    } else if (const char* env = std::getenv(kPowerUrlEnv); env && *env) {
        ep.url = env;
    } else {
        throw ConfigError(std::string("no power endpoint configured (set ") + kPowerUrlEnv + ")");
    }
    return ep;
}

double parse_power_body(const std::string& body) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
        throw FetchError(FetchError::Kind::body, "power endpoint returned invalid JSON");
    }
    if (!obj.is_object()) throw FetchError(FetchError::Kind::body, "power endpoint body is not an object");
    auto it = obj.find("power_w");
    if (it == obj.end() || !it->is_number()) throw FetchError(FetchError::Kind::body, "body lacks numeric 'power_w'");
    const double watts = it->get<double>();
    if (!std::isfinite(watts)) throw FetchError(FetchError::Kind::validation, "power_w is not finite");
    if (watts < 0.0) throw FetchError(FetchError::Kind::validation, "negative power: " + std::to_string(watts));
    return watts;
}

PowerReading poll_power(const PowerEndpoint& endpoint, std::chrono::steady_clock::time_point epoch) {
    const auto [origin, path] = split_url(endpoint.url);
    httplib::Client client(origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    if (endpoint.bearer_token) client.set_bearer_token_auth(*endpoint.bearer_token);

    auto res = client.Get(path);
    const auto received = std::chrono::steady_clock::now();
    if (!res) {
        const auto err = res.error();
        const bool timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
        throw FetchError(timed_out ? FetchError::Kind::timeout : FetchError::Kind::connect,
                         "power endpoint request failed: " + httplib::to_string(err));
    }
    if (res->status != 200) {
        throw FetchError(FetchError::Kind::status, "power endpoint returned HTTP " + std::to_string(res->status),
                         res->status);
    }
    return PowerReading{std::chrono::duration_cast<Timestamp>(received - epoch), parse_power_body(res->body)};
}

PowerPoller::PowerPoller(PowerEndpoint endpoint, double hz, std::chrono::steady_clock::time_point epoch)
    : endpoint_(std::move(endpoint)),
      tick_(std::chrono::nanoseconds(static_cast<std::int64_t>(std::llround(1e9 / hz)))),
      epoch_(epoch) {
    if (!(hz >= 1.0)) throw ValidationError("power_hz must be >= 1");
}

PowerPoller::~PowerPoller() { stop(); }

void PowerPoller::start(ReadingSink on_reading, TickSink on_tick) {
    if (running_.exchange(true)) return;
    worker_ = std::thread([this, r = std::move(on_reading), t = std::move(on_tick)]() mutable {
        run(std::move(r), std::move(t));
    });
}

void PowerPoller::stop() {
    running_ = false;
    if (worker_.joinable()) worker_.join();
}

void PowerPoller::run(ReadingSink on_reading, TickSink on_tick) {
    using clock = std::chrono::steady_clock;
    std::int64_t n = 1;
    while (running_) {
        const auto due = epoch_ + n * tick_;
        std::this_thread::sleep_until(due);
        if (!running_) break;
        ++requests_;
        Timestamp stamp = std::chrono::duration_cast<Timestamp>(clock::now() - epoch_);
        try {
            PowerReading reading = poll_power(endpoint_, epoch_);
            stamp = reading.timestamp;
            if (on_reading) on_reading(reading);
        } catch (const FetchError&) {
            ++failures_;
        }
        if (on_tick) on_tick(stamp);
        // Skip every tick whose due time already passed.
        const auto elapsed = clock::now() - epoch_;
        const std::int64_t next = elapsed / tick_ + 1;
        if (next > n + 1) skipped_ += static_cast<std::size_t>(next - n - 1);
        n = std::max(n + 1, next);
    }
}

}  // namespace wattribute::telemetry
