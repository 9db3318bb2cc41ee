#include "wattribute/telemetry/process_sampler.hpp"

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

namespace wattribute::telemetry {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

// Reads "key: value" style files (status, io) into the requested slots.
std::int64_t field_value(const std::filesystem::path& file, const std::string& key) {
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key, 0) == 0 && line.size() > key.size() && line[key.size()] == ':') {
            return std::stoll(line.substr(key.size() + 1));
        }
    }
    return 0;
}

}  // namespace

ProcfsSampler::ProcfsSampler(std::filesystem::path proc_root)
    : root_(std::move(proc_root)), ticks_per_second_(sysconf(_SC_CLK_TCK)), page_size_(sysconf(_SC_PAGESIZE)) {}

std::vector<ProcessSample> ProcfsSampler::sweep(Timestamp now) {
    std::vector<ProcessSample> out;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(root_, ec)) {
        const std::string pid_text = entry.path().filename().string();
        if (!all_digits(pid_text)) continue;

        std::ifstream stat_file(entry.path() / "stat");
        std::string stat;
        if (!std::getline(stat_file, stat)) continue;  // process exited mid-sweep
        const auto open = stat.find('(');
        const auto close = stat.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open) continue;

        std::istringstream rest(stat.substr(close + 1));
        std::vector<std::string> fields;
        for (std::string tok; rest >> tok;) fields.push_back(tok);
        if (fields.size() < 22) continue;

        const auto ticks_to_ns = [this](std::int64_t ticks) {
            return ticks * (1'000'000'000LL / ticks_per_second_);
        };
        try {
            ProcessSample s;
            s.timestamp = now;
            s.key.pid = std::stoll(pid_text);
            s.key.start_id = ticks_to_ns(std::stoll(fields[19]));
            s.name = stat.substr(open + 1, close - open - 1);
            s.counters["cpu_time_ns"] = ticks_to_ns(std::stoll(fields[11]) + std::stoll(fields[12]));
            s.counters["mem_rss_bytes"] = std::stoll(fields[21]) * page_size_;

            const auto status = entry.path() / "status";
            s.counters["ctx_switches"] =
                field_value(status, "voluntary_ctxt_switches") + field_value(status, "nonvoluntary_ctxt_switches");
            // io is root-only for foreign processes; unreadable files report zeros.
            const auto io = entry.path() / "io";
            s.counters["disk_read_bytes"] = field_value(io, "read_bytes");
            s.counters["disk_write_bytes"] = field_value(io, "write_bytes");
            s.counters["syscalls"] = field_value(io, "syscr") + field_value(io, "syscw");
            out.push_back(std::move(s));
        } catch (const std::exception&) {
            continue;  // racing with process exit
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
}

}  // namespace wattribute::telemetry
