#include "wattribute/estimator/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "wattribute/error.hpp"

namespace wattribute::estimator {

namespace {

void check_problem(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y) {
    if (Z.rows() != y.size()) throw ValidationError("design rows and energy vector differ in length");
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Largest eigenvalue of a symmetric PSD matrix by power iteration; accurate
// enough to seed the backtracking step.
double largest_eigenvalue(const Eigen::MatrixXd& G) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(G.rows()) / std::sqrt(static_cast<double>(G.rows()));
    double lambda = 0.0;
    for (int i = 0; i < 100; ++i) {
        Eigen::VectorXd u = G * v;
        const double norm = u.norm();
        if (norm == 0.0) return 0.0;
        const double next = v.dot(u);
        v = u / norm;
        if (std::abs(next - lambda) <= 1e-6 * std::abs(next)) return next;
        lambda = next;
    }
    return lambda;
}

// Stationarity violation from the negative half-gradient pieces g_w = 2 Z'r, g_s = 2 1'r.
double kkt_violation(const Eigen::VectorXd& g, const Eigen::VectorXd& theta, double lambda1, double lambda2) {
    const Eigen::Index p = theta.size() - 1;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
        const double v = theta(j) != 0.0 ? std::abs(g(j) - lambda1 * sign(theta(j)))
                                         : std::max(0.0, std::abs(g(j)) - lambda1);
        worst = std::max(worst, v);
    }
    const double gs = g(p);
    worst = std::max(worst, theta(p) > 0.0 ? std::abs(gs - lambda2) : std::max(0.0, gs - lambda2));
    return worst;
}

// Stationary point of the smooth part plus the linearized penalty on the support of
// theta: G_AA x_A = b_A - (lambda1 sign, lambda2) / 2. Empty when the solve breaks
// the sign pattern or s >= 0.
std::optional<Eigen::VectorXd> polish_support(const Eigen::MatrixXd& G, const Eigen::VectorXd& b,
                                              const Eigen::VectorXd& theta, double lambda1, double lambda2) {
    const Eigen::Index p = theta.size() - 1;
    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j <= p; ++j)
        if (theta(j) != 0.0) active.push_back(j);
    if (active.empty()) return std::nullopt;
    const auto n = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd Gaa(n, n);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index a = active[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < n; ++k) Gaa(i, k) = G(a, active[static_cast<std::size_t>(k)]);
        rhs(i) = b(a) - 0.5 * (a == p ? lambda2 : lambda1 * sign(theta(a)));
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(Gaa);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return std::nullopt;
    const Eigen::VectorXd sol = ldlt.solve(rhs);
    if (!sol.allFinite()) return std::nullopt;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(p + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index a = active[static_cast<std::size_t>(i)];
        if (sign(sol(i)) != sign(theta(a))) return std::nullopt;
        out(a) = sol(i);
    }
    return out;
}

}  // namespace

void FitOptions::validate() const {
    if (max_iters < 1) throw ValidationError("max_iters must be >= 1");
    if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
    if (!(kkt_tol > 0.0)) throw ValidationError("kkt_tol must be > 0");
    if (!(shrink > 0.0 && shrink < 1.0)) throw ValidationError("shrink must lie in (0, 1)");
    if (initial_step < 0.0) throw ValidationError("initial_step must be >= 0");
    if (stall_window < 1) throw ValidationError("stall_window must be >= 1");
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double threshold) {
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = soft_threshold(v(i), threshold);
    return out;
}

double soft_threshold(double v, double threshold) {
    if (v > threshold) return v - threshold;
    if (v < -threshold) return v + threshold;
    return 0.0;
}

double prox_nonnegative(double v, double threshold) { return std::max(v - threshold, 0.0); }

double objective(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, const Eigen::VectorXd& w, double s,
                 double lambda1, double lambda2) {
    check_problem(Z, y);
    if (Z.cols() != w.size()) throw ValidationError("weight vector does not match design width");
    const Eigen::VectorXd r = y - Z * w - Eigen::VectorXd::Constant(y.size(), s);
    return r.squaredNorm() + lambda1 * w.lpNorm<1>() + lambda2 * std::abs(s);
}

double null_baseline(const Eigen::VectorXd& y, double lambda2) {
    if (y.size() == 0) return 0.0;
    return std::max(0.0, y.mean() - lambda2 / (2.0 * static_cast<double>(y.size())));
}

double lambda1_max(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double lambda2) {
    check_problem(Z, y);
    if (Z.cols() == 0) return 0.0;
    const Eigen::VectorXd r = y.array() - null_baseline(y, lambda2);
    return 2.0 * (Z.transpose() * r).cwiseAbs().maxCoeff();
}

double kkt_residual(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, const Eigen::VectorXd& w, double s,
                    double lambda1, double lambda2) {
    check_problem(Z, y);
    const Eigen::VectorXd r = y - Z * w - Eigen::VectorXd::Constant(y.size(), s);
    Eigen::VectorXd g(w.size() + 1);
    g.head(w.size()) = 2.0 * Z.transpose() * r;
    g(w.size()) = 2.0 * r.sum();
    Eigen::VectorXd theta(w.size() + 1);
    theta << w, s;
    return kkt_violation(g, theta, lambda1, lambda2);
}

LassoSolution solve_lasso(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double lambda1, double lambda2,
                          const FitOptions& opts) {
    opts.validate();
    check_problem(Z, y);
    if (y.size() == 0) throw ValidationError("need at least one interval");
    if (Z.cols() == 0) throw ValidationError("need at least one feature");
    if (!Z.allFinite() || !y.allFinite()) throw ValidationError("design contains non-finite values");
    if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw ValidationError("regularization strengths must be >= 0");

    const Eigen::Index p = Z.cols();
    const Eigen::Index T = Z.rows();

    // Augmented design A = [Z | 1]; everything below works on its Gram matrix.
    Eigen::MatrixXd G(p + 1, p + 1);
    G.topLeftCorner(p, p) = Z.transpose() * Z;
    const Eigen::VectorXd colsum = Z.colwise().sum().transpose();
    G.topRightCorner(p, 1) = colsum;
    G.bottomLeftCorner(1, p) = colsum.transpose();
    G(p, p) = static_cast<double>(T);
    Eigen::VectorXd b(p + 1);
    b.head(p) = Z.transpose() * y;
    b(p) = y.sum();
    const double yy = y.squaredNorm();

    const auto smooth = [&](const Eigen::VectorXd& th) { return yy - 2.0 * th.dot(b) + th.dot(G * th); };
    const auto penalty = [&](const Eigen::VectorXd& th) { return lambda1 * th.head(p).lpNorm<1>() + lambda2 * th(p); };
    const auto exact = [&](const Eigen::VectorXd& th) {
        return objective(Z, y, th.head(p), th(p), lambda1, lambda2);
    };
    const auto prox = [&](const Eigen::VectorXd& v, double step) {
        Eigen::VectorXd out(p + 1);
        for (Eigen::Index j = 0; j < p; ++j) out(j) = soft_threshold(v(j), step * lambda1);
        out(p) = prox_nonnegative(v(p), step * lambda2);
        return out;
    };

    const double eps = opts.kkt_tol * std::max(1.0, y.cwiseAbs().maxCoeff());
    double step = opts.initial_step > 0.0 ? opts.initial_step : 0.5 / std::max(largest_eigenvalue(G), 1e-300);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(p + 1);
    x(p) = null_baseline(y, lambda2);
    Eigen::VectorXd x_prev = x;
    Eigen::VectorXd momentum_point = x;
    double t_k = 1.0;
    double f_prev = smooth(x) + penalty(x);

    LassoSolution sol;
    auto& diag = sol.diagnostics;
    if (opts.record_trace) diag.objective_trace.push_back(exact(x));

    int stalled = 0;
    diag.stop_reason = "max_iters";
    for (int it = 1; it <= opts.max_iters; ++it) {
        const Eigen::VectorXd grad = 2.0 * (G * momentum_point - b);
        Eigen::VectorXd next;
        for (;;) {
            next = prox(momentum_point - step * grad, step);
            const Eigen::VectorXd d = next - momentum_point;
            // f is quadratic, so the sufficient-decrease test reduces to d'Gd <= |d|^2 / (2 step).
            if (d.dot(G * d) <= d.squaredNorm() / (2.0 * step) * (1.0 + 1e-12)) break;
            step *= opts.shrink;
        }

        if (opts.accelerate) {
            // Gradient-based adaptive restart keeps the momentum from overshooting.
            if ((momentum_point - next).dot(next - x) > 0.0) {
                t_k = 1.0;
                momentum_point = next;
            } else {
                const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k));
                momentum_point = next + ((t_k - 1.0) / t_next) * (next - x);
                t_k = t_next;
            }
        } else {
            momentum_point = next;
        }
        x_prev = x;
        x = next;
        diag.iterations = it;

        const double f_now = smooth(x) + penalty(x);
        if (opts.record_trace) diag.objective_trace.push_back(exact(x));

        const Eigen::VectorXd g = -2.0 * (G * x - b);
        diag.kkt_residual = kkt_violation(g, x, lambda1, lambda2);
        if (diag.kkt_residual <= eps) {
            diag.converged = true;
            diag.stop_reason = "kkt";
            break;
        }
        const bool stalling = std::abs(f_now - f_prev) <= opts.tol * std::max(1.0, std::abs(f_now));
        if (opts.polish && (it % opts.stall_window == 0 || (stalling && stalled + 1 >= opts.stall_window))) {
            if (auto polished = polish_support(G, b, x, lambda1, lambda2)) {
                const double r = kkt_violation(-2.0 * (G * *polished - b), *polished, lambda1, lambda2);
                if (r <= eps && smooth(*polished) + penalty(*polished) <= f_now + 1e-12 * std::max(1.0, yy)) {
                    x = std::move(*polished);
                    diag.kkt_residual = r;
                    diag.converged = true;
                    diag.stop_reason = "polished";
                    if (opts.record_trace) diag.objective_trace.push_back(exact(x));
                    break;
                }
            }
        }
        stalled = stalling ? stalled + 1 : 0;
        f_prev = f_now;
        if (stalled >= opts.stall_window) {
            diag.stop_reason = "stalled";
            break;
        }
    }

    sol.w = x.head(p);
    sol.s = x(p);
    diag.step = step;
    diag.objective = exact(x);
    diag.kkt_residual = kkt_residual(Z, y, sol.w, sol.s, lambda1, lambda2);
    diag.converged = diag.kkt_residual <= eps;
    return sol;
}

}  // namespace wattribute::estimator
