#pragma once

#include <chrono>

#include <Eigen/Dense>

#include "wattribute/aggregation/design.hpp"
#include "wattribute/aggregation/feature_schema.hpp"
#include "wattribute/aggregation/standardizer.hpp"
#include "wattribute/estimator/lasso.hpp"

namespace wattribute::estimator {

/// Default baseline penalty.
inline constexpr double kDefaultLambda2 = 1.0;
/// Default lambda1 as a fraction of lambda1_max.
inline constexpr double kDefaultLambda1Ratio = 1e-3;

/// Fitted model. w is in joules per standardized feature unit, s in joules per interval.
struct ModelParams {
    Eigen::VectorXd w;
    double s = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    aggregation::Standardizer standardizer;
    aggregation::FeatureSchema schema;
    std::chrono::nanoseconds period{std::chrono::seconds(1)};
    SolverDiagnostics diagnostics;

    /// Joules per raw counter unit, i.e. w_j / sigma_j.
    Eigen::VectorXd raw_marginal_costs() const;
};

/// Fits on `design`; the standardizer snapshot is the one used to build it.
ModelParams fit(const aggregation::DesignMatrix& design, const aggregation::Standardizer& standardizer,
                double lambda1, double lambda2, const FitOptions& opts = {});

/// lambda1 = kDefaultLambda1Ratio * lambda1_max at lambda2 = kDefaultLambda2.
double default_lambda1(const aggregation::DesignMatrix& design, double lambda2 = kDefaultLambda2);

/// y_hat_t = z_t.w + s. Throws SchemaMismatchError when the columns differ.
Eigen::VectorXd predict_node(const ModelParams& params, const aggregation::DesignMatrix& design);

void check_compatible(const ModelParams& params, const aggregation::DesignMatrix& design);

}  // namespace wattribute::estimator
