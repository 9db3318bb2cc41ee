#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>

#include "wattribute/telemetry/types.hpp"

namespace fixtures {

using namespace std::chrono_literals;
using wattribute::telemetry::PowerReading;
using wattribute::telemetry::ProcessSample;
using wattribute::telemetry::TelemetryEvent;
using wattribute::telemetry::Timestamp;

inline Timestamp seconds(double s) { return Timestamp(static_cast<std::int64_t>(std::llround(s * 1e9))); }

inline ProcessSample proc(double t_s, std::int64_t pid, std::map<std::string, std::int64_t> counters,
                          std::string name = "p", std::int64_t start_id = 0) {
    ProcessSample s;
    s.timestamp = seconds(t_s);
    s.key = {pid, start_id};
    s.name = std::move(name);
    s.counters = std::move(counters);
    return s;
}

inline PowerReading power(double t_s, double watts) { return PowerReading{seconds(t_s), watts}; }

// Directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("wattribute-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

}  // namespace fixtures
