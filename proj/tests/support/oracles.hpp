#pragma once

// Independent reference implementations used to cross-check the library.
// Deliberately naive: no Eigen, no shared helpers with the code under test.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;  // row-major

// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        if (A[piv][c] == 0.0) throw std::runtime_error("singular system");
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= A[i][k] * x[k];
        x[i] = acc / A[i][i];
    }
    return x;
}

// Least squares on [Z | 1] via the normal equations; last entry is the intercept.
inline std::vector<double> ols_with_intercept(const Matrix& Z, const std::vector<double>& y) {
    const std::size_t T = Z.size(), p = Z.front().size();
    Matrix N(p + 1, std::vector<double>(p + 1, 0.0));
    std::vector<double> rhs(p + 1, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        std::vector<double> a = Z[t];
        a.push_back(1.0);
        for (std::size_t i = 0; i <= p; ++i) {
            rhs[i] += a[i] * y[t];
            for (std::size_t k = 0; k <= p; ++k) N[i][k] += a[i] * a[k];
        }
    }
    return solve(N, rhs);
}

// O(n^2) average ranks: 1 + (#smaller) + (#equal - 1) / 2.
inline std::vector<double> brute_ranks(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0.0, equal = 0.0;
        for (double u : v) {
            if (u < v[i]) less += 1.0;
            if (u == v[i]) equal += 1.0;
        }
        r[i] = 1.0 + less + (equal - 1.0) / 2.0;
    }
    return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson(brute_ranks(x), brute_ranks(y));
}

inline double objective(const Matrix& Z, const std::vector<double>& y, const std::vector<double>& w, double s,
                        double l1, double l2) {
    double acc = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        double pred = s;
        for (std::size_t j = 0; j < w.size(); ++j) pred += Z[t][j] * w[j];
        acc += (y[t] - pred) * (y[t] - pred);
    }
    for (double v : w) acc += l1 * std::abs(v);
    return acc + l2 * std::abs(s);
}

inline double r2(const std::vector<double>& y, const std::vector<double>& yhat) {
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += (y[i] - yhat[i]) * (y[i] - yhat[i]);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    return 1.0 - ss_res / ss_tot;
}

inline double mae(const std::vector<double>& y, const std::vector<double>& yhat) {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) acc += std::abs(y[i] - yhat[i]);
    return acc / static_cast<double>(y.size());
}

}  // namespace oracle
