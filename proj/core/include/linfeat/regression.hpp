#pragma once

#include <string>

#include "linfeat/types.hpp"

namespace linfeat {

/// Column-centered design matrix and mean-removed response, with the means
/// kept for intercept reconstruction.
struct CenteredProblem {
    Matrix Xc;
    Vector yc;
    Vector x_mean;
    double y_mean = 0;
};

CenteredProblem center_problem(const Matrix& X, const Vector& y);

/// A fitted coefficient vector with the prediction rule
/// yhat(x) = intercept + x . beta, intercept = y_mean - x_mean . beta.
struct CoefficientVector {
    Vector beta;
    double intercept = 0;
    std::string label;  ///< provenance: "ridge lambda=...", "pls k=...", "feature_t1"
};

/// Thin SVD of the centered training matrix, truncated at
/// rank_tol * s1 with rank_tol = machine epsilon * max(n, p). Evaluating
/// beta(lambda) costs O(r(n+p)) per lambda.
struct RidgePathModel {
    Matrix U;       ///< n x r
    Vector s;       ///< r singular values, descending, all > rank_tol * s(0)
    Matrix V;       ///< p x r
    Vector uty;     ///< U^T yc
    Vector x_mean;  ///< zeros when fitted from pre-centered data
    double y_mean = 0;
    double rank_tol = 0;

    Index rank() const { return s.size(); }
    Index p() const { return V.rows(); }
};

/// Fit from pre-centered data; means recorded as zero.
RidgePathModel ridge_fit(const Matrix& Xc, const Vector& yc);
RidgePathModel ridge_fit(const CenteredProblem& prob);

/// beta(lambda) = V diag(s_i / (s_i^2 + lambda)) U^T yc. lambda = 0 gives the
/// minimum-norm least squares solution on the truncated rank. Throws
/// ArgumentError for lambda < 0.
CoefficientVector ridge_beta(const RidgePathModel& model, double lambda);

/// PLS1 via NIPALS with X and y deflation. Regularization parameter is the
/// discrete component count k.
struct PlsModel {
    int k = 0;
    Matrix weights;   ///< p x k (W, unit columns)
    Matrix scores;    ///< n x k (T, mutually orthogonal columns)
    Matrix loadings;  ///< p x k (P)
    Vector q;         ///< length k
    Vector beta;      ///< W (P^T W)^{-1} q
    Vector x_mean;
    double y_mean = 0;
};

/// Requires 1 <= k <= rank(Xc) (ArgumentError); a collapsing weight norm
/// during deflation throws NumericError.
PlsModel pls_fit(const Matrix& Xc, const Vector& yc, int k);
PlsModel pls_fit(const CenteredProblem& prob, int k);

CoefficientVector pls_coefficients(const PlsModel& model);

/// yhat_i = intercept + x_i . beta. Throws ArgumentError on column mismatch.
Vector predict(const CoefficientVector& coef, const Matrix& X);

/// Numerical rank under the same truncation convention as ridge_fit.
Index matrix_rank(const Matrix& Xc);

}  // namespace linfeat
