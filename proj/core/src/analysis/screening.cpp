#include "wattribute/analysis/screening.hpp"

#include <algorithm>
#include <cmath>

#include "wattribute/analysis/spearman.hpp"
#include "wattribute/error.hpp"

namespace wattribute::analysis {

std::vector<std::string> default_exclusions() { return {"net_rx_bytes", "net_tx_bytes"}; }

CorrelationReport correlate_features(const aggregation::IntervalSet& set) {
    const std::size_t T = set.intervals.size();
    const std::size_t p = set.feature_names.size();
    std::vector<std::vector<double>> sums(p, std::vector<double>(T, 0.0));
    std::vector<double> energy(T);
    for (std::size_t t = 0; t < T; ++t) {
        const auto& rec = set.intervals[t];
        energy[t] = rec.energy_j;
        for (const auto& row : rec.rows)
            for (std::size_t j = 0; j < p; ++j) sums[j][t] += row.features[j];
    }

    CorrelationReport report;
    report.samples = T;
    for (std::size_t j = 0; j < p; ++j) {
        FeatureCorrelation fc{set.feature_names[j], std::nullopt, T};
        if (T >= 2) fc.rho = spearman(sums[j], energy);
        report.features.push_back(std::move(fc));
    }
    return report;
}

ScreeningResult screen_features(const aggregation::IntervalSet& set, double rho_min,
                                const std::vector<std::string>& exclusions) {
    if (!(rho_min >= 0.0 && rho_min <= 1.0)) throw ConfigError("rho_min must lie in [0, 1]");
    ScreeningResult out;
    out.schema = set.schema;
    out.correlations = correlate_features(set);

    for (const auto& f : set.schema.features()) {
        ScreeningEntry e{f.name, std::nullopt, false, "disabled"};
        if (f.enabled) {
            const auto it = std::find_if(out.correlations.features.begin(), out.correlations.features.end(),
                                         [&](const auto& c) { return c.feature == f.name; });
            if (it != out.correlations.features.end()) e.rho = it->rho;
            if (std::find(exclusions.begin(), exclusions.end(), f.name) != exclusions.end()) {
                e.reason = "excluded";
            } else if (!e.rho) {
                e.reason = "degenerate";
            } else if (std::abs(*e.rho) < rho_min) {
                e.reason = "below_threshold";
            } else {
                e.kept = true;
                e.reason = "kept";
            }
            out.schema.set_enabled(f.name, e.kept);
        }
        out.entries.push_back(std::move(e));
    }
    if (out.schema.enabled_count() == 0) throw ConfigError("feature screening pruned every feature");
    return out;
}

}  // namespace wattribute::analysis
