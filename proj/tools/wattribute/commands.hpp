#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wattribute/estimator/attribution.hpp"
#include "wattribute/run_config.hpp"

namespace wattribute::cli {

enum ExitCode : int { kExitOk = 0, kExitData = 1, kExitUsage = 2 };

/// Wide per-interval table: the top-k processes by total energy get their own
/// column, the rest fold into "Other".
struct Decomposition {
    std::vector<std::string> process_labels;
    struct Row {
        std::int64_t index = 0;
        std::int64_t t_start_ns = 0;
        std::vector<double> process_j;  // aligned with process_labels
        double other_j = 0.0;
        double baseline_j = 0.0;
        double predicted_j = 0.0;
        double actual_j = 0.0;
        double residual_j = 0.0;
    };
    std::vector<Row> rows;
};

Decomposition decompose(const estimator::AttributionResult& result, std::size_t top_k);
void write_decomposition_csv(const Decomposition& d, std::ostream& out);

enum class PhaseLabel { idle, compute, transition };
std::string_view to_string(PhaseLabel p);

/// Labels each interval from its predicted process energy (predicted minus
/// baseline): near zero is idle, a large step to a neighbour is a transition.
std::vector<PhaseLabel> classify_phases(const std::vector<double>& activity);

int cmd_simulate(const std::filesystem::path& scenario, std::filesystem::path trace_out, const RunConfig& cfg,
                 std::ostream& out, std::ostream& err);
int cmd_record(const std::filesystem::path& trace_out, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fit(const std::filesystem::path& trace, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_attribute(const std::filesystem::path& trace, std::filesystem::path model_path, const RunConfig& cfg,
                  std::ostream& out, std::ostream& err);
int cmd_report(std::filesystem::path metrics_path, std::filesystem::path decomposition_path, const RunConfig& cfg,
               std::ostream& out, std::ostream& err);
int cmd_replay_check(const std::filesystem::path& trace, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wattribute::cli
