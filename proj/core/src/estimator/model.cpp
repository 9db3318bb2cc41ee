#include "wattribute/estimator/model.hpp"

#include "wattribute/error.hpp"

namespace wattribute::estimator {

Eigen::VectorXd ModelParams::raw_marginal_costs() const {
    Eigen::VectorXd out(w.size());
    const auto& sd = standardizer.stddev();
    for (Eigen::Index j = 0; j < w.size(); ++j) out(j) = w(j) / sd[static_cast<std::size_t>(j)];
    return out;
}

ModelParams fit(const aggregation::DesignMatrix& design, const aggregation::Standardizer& standardizer,
                double lambda1, double lambda2, const FitOptions& opts) {
    if (design.feature_names != standardizer.feature_names())
        throw SchemaMismatchError(standardizer.feature_names(), design.feature_names);
    LassoSolution sol = solve_lasso(design.Z, design.y, lambda1, lambda2, opts);
    ModelParams m;
    m.w = std::move(sol.w);
    m.s = sol.s;
    m.lambda1 = lambda1;
    m.lambda2 = lambda2;
    m.standardizer = standardizer;
    m.diagnostics = std::move(sol.diagnostics);
    return m;
}

double default_lambda1(const aggregation::DesignMatrix& design, double lambda2) {
    return kDefaultLambda1Ratio * lambda1_max(design.Z, design.y, lambda2);
}

void check_compatible(const ModelParams& params, const aggregation::DesignMatrix& design) {
    if (design.feature_names != params.standardizer.feature_names() ||
        static_cast<std::size_t>(params.w.size()) != design.features())
        throw SchemaMismatchError(params.standardizer.feature_names(), design.feature_names);
}

Eigen::VectorXd predict_node(const ModelParams& params, const aggregation::DesignMatrix& design) {
    check_compatible(params, design);
    return (design.Z * params.w).array() + params.s;
}

}  // namespace wattribute::estimator
