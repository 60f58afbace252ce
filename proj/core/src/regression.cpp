#include "linfeat/regression.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "linfeat/errors.hpp"
#include "pls_internal.hpp"

namespace linfeat {

namespace detail {

NipalsSweep nipals_sweep(const Matrix& Xc, const Vector& yc, int k_max) {
    const Index n = Xc.rows();
    const Index p = Xc.cols();

    NipalsSweep out;
    out.weights.resize(p, k_max);
    out.scores.resize(n, k_max);
    out.loadings.resize(p, k_max);
    out.q.resize(k_max);

    Matrix Xd = Xc;
    Vector yd = yc;
    double w_scale = 0;
    double t_scale = 0;
    constexpr double collapse = 1e-13;

    for (int a = 0; a < k_max; ++a) {
        Vector w = Xd.transpose() * yd;
        const double wn = w.norm();
        if (a == 0) w_scale = wn;
        if (wn <= collapse * w_scale || wn == 0.0) {
            out.degenerate = true;
            break;
        }
        w /= wn;

        const Vector t = Xd * w;
        const double tn = t.norm();
        if (a == 0) t_scale = tn;
        if (tn <= collapse * t_scale || tn == 0.0) {
            out.degenerate = true;
            break;
        }
        const double tt = tn * tn;

        const Vector load = Xd.transpose() * t / tt;
        const double qa = yd.dot(t) / tt;

        Xd.noalias() -= t * load.transpose();
        yd -= qa * t;

        out.weights.col(a) = w;
        out.scores.col(a) = t;
        out.loadings.col(a) = load;
        out.q(a) = qa;
        out.built = a + 1;
    }

    out.weights.conservativeResize(p, out.built);
    out.scores.conservativeResize(n, out.built);
    out.loadings.conservativeResize(p, out.built);
    out.q.conservativeResize(out.built);
    return out;
}

Vector nipals_beta(const NipalsSweep& sweep, int k) {
    const auto W = sweep.weights.leftCols(k);
    const auto P = sweep.loadings.leftCols(k);
    const Matrix ptw = P.transpose() * W;
    const Vector gamma = ptw.colPivHouseholderQr().solve(sweep.q.head(k));
    return W * gamma;
}

}  // namespace detail

CenteredProblem center_problem(const Matrix& X, const Vector& y) {
    if (X.rows() != y.size()) {
        throw ArgumentError("center_problem: row count " + std::to_string(X.rows()) +
                            " does not match response length " + std::to_string(y.size()));
    }
    if (X.rows() < 2) {
        throw ArgumentError("center_problem requires at least 2 samples");
    }
    CenteredProblem out;
    out.x_mean = X.colwise().mean();
    out.y_mean = y.mean();
    out.Xc = X.rowwise() - out.x_mean.transpose();
    out.yc = y.array() - out.y_mean;
    return out;
}

namespace {

RidgePathModel ridge_fit_impl(const Matrix& Xc, const Vector& yc, Vector x_mean,
                              double y_mean) {
    if (Xc.rows() != yc.size()) {
        throw ArgumentError("ridge_fit: row count " + std::to_string(Xc.rows()) +
                            " does not match response length " + std::to_string(yc.size()));
    }

    Eigen::BDCSVD<Matrix> svd(Xc, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericError("SVD of the centered design matrix failed");
    }

    const Vector& sv = svd.singularValues();
    const double tol_factor = std::numeric_limits<double>::epsilon() *
                              static_cast<double>(std::max(Xc.rows(), Xc.cols()));
    const double s1 = sv.size() > 0 ? sv(0) : 0.0;

    Index r = 0;
    while (r < sv.size() && sv(r) > tol_factor * s1 && sv(r) > 0.0) ++r;

    RidgePathModel model;
    model.U = svd.matrixU().leftCols(r);
    model.s = sv.head(r);
    model.V = svd.matrixV().leftCols(r);
    model.uty = model.U.transpose() * yc;
    model.x_mean = std::move(x_mean);
    model.y_mean = y_mean;
    model.rank_tol = tol_factor;
    return model;
}

}  // namespace

RidgePathModel ridge_fit(const Matrix& Xc, const Vector& yc) {
    return ridge_fit_impl(Xc, yc, Vector::Zero(Xc.cols()), 0.0);
}

RidgePathModel ridge_fit(const CenteredProblem& prob) {
    return ridge_fit_impl(prob.Xc, prob.yc, prob.x_mean, prob.y_mean);
}

CoefficientVector ridge_beta(const RidgePathModel& model, double lambda) {
    if (!(lambda >= 0)) {
        throw ArgumentError("ridge_beta requires lambda >= 0");
    }
    Vector filtered(model.rank());
    for (Index i = 0; i < model.rank(); ++i) {
        filtered(i) = model.s(i) / (model.s(i) * model.s(i) + lambda) * model.uty(i);
    }

    CoefficientVector out;
    out.beta = model.V * filtered;
    out.intercept = model.y_mean - model.x_mean.dot(out.beta);
    out.label = "ridge lambda=" + std::to_string(lambda);
    return out;
}

namespace {

PlsModel pls_fit_impl(const Matrix& Xc, const Vector& yc, int k, Vector x_mean,
                      double y_mean) {
    if (Xc.rows() != yc.size()) {
        throw ArgumentError("pls_fit: row count does not match response length");
    }
    if (k < 1) {
        throw ArgumentError("pls_fit requires k >= 1");
    }
    const Index rank = matrix_rank(Xc);
    if (k > rank) {
        throw ArgumentError("pls_fit: k=" + std::to_string(k) + " exceeds rank " +
                            std::to_string(rank));
    }

    detail::NipalsSweep sweep = detail::nipals_sweep(Xc, yc, k);
    if (sweep.built < k) {
        throw NumericError("PLS deflation degenerated at component " +
                           std::to_string(sweep.built + 1));
    }

    PlsModel model;
    model.k = k;
    model.beta = detail::nipals_beta(sweep, k);
    model.weights = std::move(sweep.weights);
    model.scores = std::move(sweep.scores);
    model.loadings = std::move(sweep.loadings);
    model.q = std::move(sweep.q);
    model.x_mean = std::move(x_mean);
    model.y_mean = y_mean;
    return model;
}

}  // namespace

PlsModel pls_fit(const Matrix& Xc, const Vector& yc, int k) {
    return pls_fit_impl(Xc, yc, k, Vector::Zero(Xc.cols()), 0.0);
}

PlsModel pls_fit(const CenteredProblem& prob, int k) {
    return pls_fit_impl(prob.Xc, prob.yc, k, prob.x_mean, prob.y_mean);
}

CoefficientVector pls_coefficients(const PlsModel& model) {
    CoefficientVector out;
    out.beta = model.beta;
    out.intercept = model.y_mean - model.x_mean.dot(model.beta);
    out.label = "pls k=" + std::to_string(model.k);
    return out;
}

Vector predict(const CoefficientVector& coef, const Matrix& X) {
    if (X.cols() != coef.beta.size()) {
        throw ArgumentError("predict: " + std::to_string(X.cols()) +
                            " columns vs coefficient length " +
                            std::to_string(coef.beta.size()));
    }
    return (X * coef.beta).array() + coef.intercept;
}

Index matrix_rank(const Matrix& Xc) {
    Eigen::BDCSVD<Matrix> svd(Xc);
    const Vector& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double tol = std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max(Xc.rows(), Xc.cols())) * sv(0);
    Index r = 0;
    while (r < sv.size() && sv(r) > tol && sv(r) > 0.0) ++r;
    return r;
}

}  // namespace linfeat
