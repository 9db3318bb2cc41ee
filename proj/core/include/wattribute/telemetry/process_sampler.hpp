#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <vector>

#include "wattribute/telemetry/types.hpp"

namespace wattribute::telemetry {

/// Produces one sweep: a sample for every visible process at `now`.
class ProcessSampler {
public:
    virtual ~ProcessSampler() = default;
    virtual std::vector<ProcessSample> sweep(Timestamp now) = 0;
};

/// Linux /proc adapter. Reports cpu_time_ns (utime+stime), mem_rss_bytes,
/// disk_read_bytes/disk_write_bytes and syscalls (from io, when readable) and
/// ctx_switches. start_id is the process start time in nanoseconds since boot.
class ProcfsSampler final : public ProcessSampler {
public:
    explicit ProcfsSampler(std::filesystem::path proc_root = "/proc");

    std::vector<ProcessSample> sweep(Timestamp now) override;

private:
    std::filesystem::path root_;
    long ticks_per_second_;
    long page_size_;
};

}  // namespace wattribute::telemetry
