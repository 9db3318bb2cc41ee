#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wattribute::estimator {

/// Proximal-gradient settings. Backtracking starts at initial_step (0 picks
/// 1 / (2 * estimated largest eigenvalue of the Gram matrix)) and multiplies by
/// shrink until the quadratic upper bound holds. Convergence means the KKT
/// residual fell below kkt_tol * max(1, |y|_inf).
struct FitOptions {
    int max_iters = 50'000;
    double tol = 1e-10;  // relative objective change treated as a stall
    double initial_step = 0.0;
    double shrink = 0.5;
    bool accelerate = true;
    double kkt_tol = 1e-8;
    int stall_window = 50;      // consecutive stalled iterations before giving up
    bool polish = true;         // every stall_window iterations, try an exact solve on the current support
    bool record_trace = false;  // keep the exact objective after every iteration

    void validate() const;
};

struct SolverDiagnostics {
    int iterations = 0;
    double objective = 0.0;
    double step = 0.0;
    double kkt_residual = 0.0;
    bool converged = false;
    std::string stop_reason;
    std::vector<double> objective_trace;
};

/// Minimizer of sum_t (y_t - z_t.w - s)^2 + lambda1 |w|_1 + lambda2 s over s >= 0.
struct LassoSolution {
    Eigen::VectorXd w;
    double s = 0.0;
    SolverDiagnostics diagnostics;
};

/// Elementwise sign(v) * max(|v| - threshold, 0).
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double threshold);
double soft_threshold(double v, double threshold);

/// Prox of threshold * s + indicator(s >= 0): max(v - threshold, 0).
double prox_nonnegative(double v, double threshold);

/// Exact objective value. Throws ValidationError on dimension mismatch.
double objective(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, const Eigen::VectorXd& w, double s,
                 double lambda1, double lambda2);

/// Optimal baseline when w = 0: max(0, mean(y) - lambda2 / (2T)).
double null_baseline(const Eigen::VectorXd& y, double lambda2);

/// Smallest lambda1 for which w = 0 is optimal: 2 max_j |Z_j.(y - s0)| with s0 the null baseline.
double lambda1_max(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double lambda2);

/// Largest stationarity violation of (w, s); zero exactly at the optimum.
double kkt_residual(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, const Eigen::VectorXd& w, double s,
                    double lambda1, double lambda2);

/// Accelerated (or plain) proximal gradient. With polish enabled the iterate is
/// periodically replaced by the exact stationary point on its support and sign
/// pattern when that point keeps the pattern and passes the KKT test; this never
/// raises the objective. Deterministic for fixed inputs.
/// Throws ValidationError on empty or non-finite input, negative lambdas.
LassoSolution solve_lasso(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double lambda1, double lambda2,
                          const FitOptions& opts = {});

}  // namespace wattribute::estimator
