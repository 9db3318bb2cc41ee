#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wattribute/aggregation/standardizer.hpp"
#include "wattribute/telemetry/types.hpp"

namespace wattribute::cli {

/// Pipeline settings shared by all subcommands. Loaded from --config (JSON) and
/// then overridden by command-line flags.
struct RunConfig {
    telemetry::SourceConfig source;
    std::vector<std::string> disable_features;
    std::vector<std::string> exclude_features;
    double rho_min;
    aggregation::Centering centering = aggregation::Centering::scale;
    std::optional<double> lambda1;  // unset: data-relative default
    double lambda2;
    double train_fraction = 0.8;
    std::filesystem::path out_dir = "out";
    bool clamp = false;
    bool apportion_baseline = false;
    std::size_t top_k = 8;
    std::optional<std::uint64_t> seed;

    RunConfig();

    /// Throws ConfigError.
    void validate() const;
};

/// Keys: source{kind, trace_path, power_endpoint, bearer_token, power_hz,
/// sample_period_s, duration_s}, features{disable, exclude, rho_min, centering},
/// model{lambda1, lambda2, train_fraction}, attribution{top_k, clamp,
/// apportion_baseline}, out_dir, seed.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& json_text);

}  // namespace wattribute::cli
