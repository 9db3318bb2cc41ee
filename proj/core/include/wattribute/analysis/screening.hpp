#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wattribute/aggregation/intervals.hpp"

namespace wattribute::analysis {

struct FeatureCorrelation {
    std::string feature;
    std::optional<double> rho;  // nullopt: constant aggregate, rho undefined
    std::size_t n = 0;
};

/// Spearman rho between each feature's per-interval sum of raw row values and y_t.
struct CorrelationReport {
    std::vector<FeatureCorrelation> features;
    std::size_t samples = 0;
};

CorrelationReport correlate_features(const aggregation::IntervalSet& set);

inline constexpr double kDefaultRhoMin = 0.1;
std::vector<std::string> default_exclusions();  // net_rx_bytes, net_tx_bytes

struct ScreeningEntry {
    std::string feature;
    std::optional<double> rho;
    bool kept = false;
    std::string reason;  // kept, excluded, below_threshold, degenerate, disabled
};

struct ScreeningResult {
    aggregation::FeatureSchema schema;
    std::vector<ScreeningEntry> entries;  // schema order
    CorrelationReport correlations;
};

/// Disables features on the exclusion list or with |rho| < rho_min. Throws
/// ConfigError if nothing survives.
ScreeningResult screen_features(const aggregation::IntervalSet& set, double rho_min = kDefaultRhoMin,
                                const std::vector<std::string>& exclusions = default_exclusions());

}  // namespace wattribute::analysis
