#pragma once

// Clean-room oracles: independent re-implementations written with plain
// nested-vector loops, no Eigen and no shared code with the library paths
// they check.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "linfeat/types.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline Rows to_rows(const linfeat::Matrix& m) {
    Rows out(static_cast<size_t>(m.rows()), std::vector<double>(static_cast<size_t>(m.cols())));
    for (linfeat::Index i = 0; i < m.rows(); ++i) {
        for (linfeat::Index j = 0; j < m.cols(); ++j) {
            out[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j);
        }
    }
    return out;
}

inline std::vector<double> to_vec(const linfeat::Vector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

inline linfeat::Vector to_eigen(const std::vector<double>& v) {
    linfeat::Vector out(static_cast<linfeat::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out(static_cast<linfeat::Index>(i)) = v[i];
    return out;
}

// Gaussian elimination with partial pivoting plus one iterative refinement
// pass. Generic dense solver for the normal-equations oracle.
inline std::vector<double> solve_dense(Rows a, std::vector<double> b) {
    const size_t n = a.size();
    const Rows a0 = a;
    const std::vector<double> b0 = b;

    auto eliminate = [n](Rows m, std::vector<double> rhs) {
        for (size_t col = 0; col < n; ++col) {
            size_t pivot = col;
            for (size_t r = col + 1; r < n; ++r) {
                if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
            }
            if (m[pivot][col] == 0.0) throw std::runtime_error("singular oracle system");
            std::swap(m[col], m[pivot]);
            std::swap(rhs[col], rhs[pivot]);
            for (size_t r = col + 1; r < n; ++r) {
                const double f = m[r][col] / m[col][col];
                for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
                rhs[r] -= f * rhs[col];
            }
        }
        std::vector<double> x(n, 0.0);
        for (size_t r = n; r-- > 0;) {
            double acc = rhs[r];
            for (size_t c = r + 1; c < n; ++c) acc -= m[r][c] * x[c];
            x[r] = acc / m[r][r];
        }
        return x;
    };

    std::vector<double> x = eliminate(a, b);

    // one refinement pass on the residual
    std::vector<double> residual(n, 0.0);
    for (size_t r = 0; r < n; ++r) {
        double acc = b0[r];
        for (size_t c = 0; c < n; ++c) acc -= a0[r][c] * x[c];
        residual[r] = acc;
    }
    const std::vector<double> dx = eliminate(a0, residual);
    for (size_t r = 0; r < n; ++r) x[r] += dx[r];
    return x;
}

// beta(lambda) via the dense normal equations (X^T X + lambda I) beta = X^T y.
inline std::vector<double> ridge_dense(const Rows& x, const std::vector<double>& y,
                                       double lambda) {
    const size_t n = x.size();
    const size_t p = x.front().size();
    Rows xtx(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (size_t a = 0; a < p; ++a) {
        for (size_t b = 0; b < p; ++b) {
            double acc = 0.0;
            for (size_t i = 0; i < n; ++i) acc += x[i][a] * x[i][b];
            xtx[a][b] = acc;
        }
        xtx[a][a] += lambda;
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) acc += x[i][a] * y[i];
        xty[a] = acc;
    }
    return solve_dense(std::move(xtx), std::move(xty));
}

struct NipalsResult {
    Rows weights;   // k x p
    Rows loadings;  // k x p
    std::vector<double> q;
    int built = 0;
};

// PLS1 NIPALS recursion, re-derived with raw loops.
inline NipalsResult nipals(Rows x, std::vector<double> y, int k_max) {
    const size_t n = x.size();
    const size_t p = x.front().size();
    NipalsResult out;
    for (int a = 0; a < k_max; ++a) {
        std::vector<double> w(p, 0.0);
        for (size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (size_t i = 0; i < n; ++i) acc += x[i][j] * y[i];
            w[j] = acc;
        }
        double wn = 0.0;
        for (double v : w) wn += v * v;
        wn = std::sqrt(wn);
        if (wn < 1e-300) break;
        for (double& v : w) v /= wn;

        std::vector<double> t(n, 0.0);
        double tt = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (size_t j = 0; j < p; ++j) acc += x[i][j] * w[j];
            t[i] = acc;
            tt += acc * acc;
        }
        if (tt < 1e-300) break;

        std::vector<double> load(p, 0.0);
        for (size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (size_t i = 0; i < n; ++i) acc += x[i][j] * t[i];
            load[j] = acc / tt;
        }
        double qa = 0.0;
        for (size_t i = 0; i < n; ++i) qa += y[i] * t[i];
        qa /= tt;

        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < p; ++j) x[i][j] -= t[i] * load[j];
            y[i] -= qa * t[i];
        }

        out.weights.push_back(std::move(w));
        out.loadings.push_back(std::move(load));
        out.q.push_back(qa);
        out.built = a + 1;
    }
    return out;
}

// beta = W (P^T W)^{-1} q from the first k components.
inline std::vector<double> nipals_beta(const NipalsResult& r, int k) {
    const size_t p = r.weights.front().size();
    const size_t kk = static_cast<size_t>(k);
    Rows ptw(kk, std::vector<double>(kk, 0.0));
    for (size_t a = 0; a < kk; ++a) {
        for (size_t b = 0; b < kk; ++b) {
            double acc = 0.0;
            for (size_t j = 0; j < p; ++j) acc += r.loadings[a][j] * r.weights[b][j];
            ptw[a][b] = acc;
        }
    }
    std::vector<double> q(r.q.begin(), r.q.begin() + k);
    const std::vector<double> gamma = solve_dense(std::move(ptw), std::move(q));
    std::vector<double> beta(p, 0.0);
    for (size_t j = 0; j < p; ++j) {
        double acc = 0.0;
        for (size_t b = 0; b < kk; ++b) acc += r.weights[b][j] * gamma[b];
        beta[j] = acc;
    }
    return beta;
}

struct MeanStd {
    std::vector<double> mean;
    std::vector<double> stddev;
};

// Two-pass column mean / sample std.
inline MeanStd two_pass_stats(const Rows& x) {
    const size_t n = x.size();
    const size_t p = x.front().size();
    MeanStd out;
    out.mean.assign(p, 0.0);
    out.stddev.assign(p, 0.0);
    for (size_t j = 0; j < p; ++j) {
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) acc += x[i][j];
        out.mean[j] = acc / static_cast<double>(n);
    }
    if (n >= 2) {
        for (size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (size_t i = 0; i < n; ++i) {
                const double d = x[i][j] - out.mean[j];
                acc += d * d;
            }
            out.stddev[j] = std::sqrt(acc / static_cast<double>(n - 1));
        }
    }
    return out;
}

// Orthonormal basis of the span of the given rows via modified Gram-Schmidt.
inline Rows gram_schmidt(const Rows& rows) {
    Rows basis;
    for (std::vector<double> v : rows) {
        for (const auto& b : basis) {
            double proj = 0.0;
            for (size_t j = 0; j < v.size(); ++j) proj += v[j] * b[j];
            for (size_t j = 0; j < v.size(); ++j) v[j] -= proj * b[j];
        }
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (norm > 1e-12) {
            for (double& c : v) c /= norm;
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

}  // namespace oracle
