#include "wattribute/estimator/attribution.hpp"

namespace wattribute::estimator {

namespace {

void clamp_and_renormalize(IntervalAttribution& out) {
    double total = 0.0, positive = 0.0;
    for (const auto& p : out.processes) {
        total += p.energy_j;
        if (p.energy_j > 0.0) positive += p.energy_j;
    }
    if (total > 0.0 && positive > 0.0) {
        const double scale = total / positive;
        for (auto& p : out.processes) p.energy_j = p.energy_j > 0.0 ? p.energy_j * scale : 0.0;
    } else {
        for (auto& p : out.processes) p.energy_j = 0.0;
        out.baseline_j += total;
    }
}

}  // namespace

AttributionResult attribute(const ModelParams& params, const aggregation::DesignMatrix& design,
                            const AttributionOptions& opts) {
    const Eigen::VectorXd pred = predict_node(params, design);
    const Eigen::VectorXd per_row = design.rows * params.w;

    AttributionResult result;
    result.intervals.reserve(design.intervals());
    for (std::size_t t = 0; t < design.intervals(); ++t) {
        IntervalAttribution out;
        out.index = design.interval_index[t];
        out.t_start = design.t_start[t];
        out.baseline_j = params.s;
        out.node_pred_j = pred(static_cast<Eigen::Index>(t));
        out.node_actual_j = design.y(static_cast<Eigen::Index>(t));
        out.residual_j = out.node_actual_j - out.node_pred_j;
        for (std::size_t r = design.row_offsets[t]; r < design.row_offsets[t + 1]; ++r) {
            const auto& ref = design.row_refs[r];
            out.processes.push_back({ref.key, ref.name, per_row(static_cast<Eigen::Index>(r))});
        }
        if (opts.clamp_negative) clamp_and_renormalize(out);
        if (opts.apportion_baseline && !out.processes.empty()) {
            const double share = out.baseline_j / static_cast<double>(out.processes.size());
            for (auto& p : out.processes) p.energy_j += share;
            out.baseline_j = 0.0;
        }
        result.intervals.push_back(std::move(out));
    }
    return result;
}

}  // namespace wattribute::estimator
