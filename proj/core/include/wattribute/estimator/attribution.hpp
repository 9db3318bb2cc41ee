#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wattribute/estimator/model.hpp"

namespace wattribute::estimator {

struct AttributionOptions {
    /// Negative process terms become 0 and the positive ones are rescaled so the
    /// process total is unchanged. If the total is not positive, every process
    /// gets 0 and the baseline line absorbs it.
    bool clamp_negative = false;
    /// Splits the baseline equally across the interval's processes.
    bool apportion_baseline = false;
};

struct ProcessAttribution {
    telemetry::ProcessKey key;
    std::string name;
    double energy_j = 0.0;
};

struct IntervalAttribution {
    std::int64_t index = 0;
    telemetry::Timestamp t_start{0};
    std::vector<ProcessAttribution> processes;
    double baseline_j = 0.0;
    double node_pred_j = 0.0;
    double node_actual_j = 0.0;
    double residual_j = 0.0;  // actual - predicted
};

/// Per interval, the processes' terms plus baseline_j sum to node_pred_j.
struct AttributionResult {
    std::vector<IntervalAttribution> intervals;
};

AttributionResult attribute(const ModelParams& params, const aggregation::DesignMatrix& design,
                            const AttributionOptions& opts = {});

}  // namespace wattribute::estimator
