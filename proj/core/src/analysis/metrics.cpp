#include "wattribute/analysis/metrics.hpp"

#include "wattribute/error.hpp"

namespace wattribute::analysis {

MetricsReport score_predictions(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted) {
    if (actual.size() != predicted.size()) throw ValidationError("prediction length mismatch");
    if (actual.size() == 0) throw ValidationError("cannot score an empty test set");
    MetricsReport m;
    m.t_test = static_cast<std::size_t>(actual.size());
    const double mean = actual.mean();
    const double ss_res = (actual - predicted).squaredNorm();
    const double ss_tot = (actual.array() - mean).matrix().squaredNorm();
    if (ss_tot > 0.0) m.r2 = 1.0 - ss_res / ss_tot;
    m.mae_j = (actual - predicted).cwiseAbs().mean();
    if (mean != 0.0) m.mae_pct = 100.0 * m.mae_j / mean;
    return m;
}

MetricsReport score(const estimator::ModelParams& params, const aggregation::DesignMatrix& test,
                    std::size_t t_train) {
    MetricsReport m = score_predictions(test.y, estimator::predict_node(params, test));
    m.t_train = t_train;
    return m;
}

}  // namespace wattribute::analysis
