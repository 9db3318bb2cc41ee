#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "wattribute/estimator/model.hpp"

namespace wattribute::analysis {

struct MetricsReport {
    std::optional<double> r2;       // undefined when the test energies are constant
    double mae_j = 0.0;
    std::optional<double> mae_pct;  // 100 * mae / mean(y); undefined when mean(y) == 0
    std::size_t t_train = 0;
    std::size_t t_test = 0;
};

/// R^2, MAE and MAE percent of predictions against actual energies.
MetricsReport score_predictions(const Eigen::VectorXd& actual, const Eigen::VectorXd& predicted);

/// Scores params on a held-out design. Throws ValidationError on an empty test set.
MetricsReport score(const estimator::ModelParams& params, const aggregation::DesignMatrix& test,
                    std::size_t t_train = 0);

}  // namespace wattribute::analysis
