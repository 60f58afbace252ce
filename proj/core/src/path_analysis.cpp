#include "linfeat/path_analysis.hpp"

#include <cmath>
#include <string>

#include "linfeat/errors.hpp"
#include "pls_internal.hpp"

namespace linfeat {

namespace {

/// d(lambda) in the SVD basis. With c = V^T target and
/// f_i(lambda) = s_i uty_i / (s_i^2 + lambda):
///   coefficient distance: sum_i (f_i - c_i)^2 + ||(I - VV^T) target||^2
///   prediction distance:  sum_i s_i^2 (f_i - c_i)^2
/// The nullspace component of the target only enters the coefficient form.
struct InBasisDistance {
    const RidgePathModel& model;
    DistanceObjective objective;
    Vector target_in_basis;
    double target_perp_sq = 0;

    InBasisDistance(const RidgePathModel& m, const Vector& target, DistanceObjective obj)
        : model(m), objective(obj) {
        target_in_basis = model.V.transpose() * target;
        target_perp_sq =
            std::max(0.0, target.squaredNorm() - target_in_basis.squaredNorm());
    }

    double operator()(double lambda) const {
        double acc = 0;
        for (Index i = 0; i < model.rank(); ++i) {
            const double s = model.s(i);
            const double f = s / (s * s + lambda) * model.uty(i);
            const double diff = f - target_in_basis(i);
            acc += objective == DistanceObjective::prediction_distance
                       ? s * s * diff * diff
                       : diff * diff;
        }
        if (objective == DistanceObjective::coefficient_distance) acc += target_perp_sq;
        return acc;
    }
};

/// Golden-section minimization over log(lambda); converges the bracket to a
/// relative lambda width of 1e-6. Ties keep the left (smaller lambda) side.
double golden_section_log(const InBasisDistance& dist, double lambda_lo, double lambda_hi) {
    constexpr double invphi = 0.6180339887498949;
    constexpr double tol = 1e-6;
    double a = std::log(lambda_lo);
    double b = std::log(lambda_hi);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = dist(std::exp(x1));
    double f2 = dist(std::exp(x2));
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = dist(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = dist(std::exp(x2));
        }
    }
    return std::exp(0.5 * (a + b));
}

}  // namespace

LambdaRange default_lambda_range(const RidgePathModel& model) {
    if (model.rank() == 0) {
        throw NumericError("ridge path model has rank 0");
    }
    const double s1_sq = model.s(0) * model.s(0);
    return {1e-10 * s1_sq, 1e8 * s1_sq};
}

PathSearchResult ridge_closest(const RidgePathModel& model,
                               const CoefficientVector& target,
                               DistanceObjective objective,
                               const LambdaRange& range, int grid_points) {
    if (target.beta.size() != model.p()) {
        throw ArgumentError("ridge_closest: target length " +
                            std::to_string(target.beta.size()) +
                            " does not match model dimension " + std::to_string(model.p()));
    }
    if (!(range.lo >= 0) || !(range.lo < range.hi)) {
        throw ArgumentError("ridge_closest: empty lambda range");
    }
    if (grid_points < 16) {
        throw ArgumentError("ridge_closest requires grid_points >= 16");
    }
    if (model.rank() == 0) {
        throw NumericError("ridge path model has rank 0");
    }

    const double s1_sq = model.s(0) * model.s(0);
    const double lo = std::max(range.lo, 1e-12 * s1_sq);
    const double hi = range.hi;
    if (!(lo < hi)) {
        throw ArgumentError("ridge_closest: lambda range empty after clamping");
    }

    const InBasisDistance dist(model, target.beta, objective);

    PathSearchResult result;
    result.objective = objective;
    result.distance_curve.reserve(static_cast<size_t>(grid_points));

    const double log_lo = std::log(lo);
    const double log_step = (std::log(hi) - log_lo) / static_cast<double>(grid_points - 1);
    size_t best = 0;
    for (int g = 0; g < grid_points; ++g) {
        const double lambda = std::exp(log_lo + log_step * static_cast<double>(g));
        const double d = dist(lambda);
        result.distance_curve.emplace_back(lambda, d);
        if (d < result.distance_curve[best].second) best = static_cast<size_t>(g);
    }

    const double bracket_lo =
        result.distance_curve[best > 0 ? best - 1 : 0].first;
    const double bracket_hi =
        result.distance_curve[std::min(best + 1, result.distance_curve.size() - 1)].first;

    double lambda_star = result.distance_curve[best].first;
    double d_star = result.distance_curve[best].second;
    if (bracket_lo < bracket_hi) {
        const double refined = golden_section_log(dist, bracket_lo, bracket_hi);
        const double d_refined = dist(refined);
        if (d_refined < d_star) {
            lambda_star = refined;
            d_star = d_refined;
        }
    }

    result.lambda_star = lambda_star;
    result.distance_at_opt = d_star;
    result.beta_star = ridge_beta(model, lambda_star);
    return result;
}

PathSearchResult ridge_closest(const RidgePathModel& model,
                               const CoefficientVector& target,
                               DistanceObjective objective) {
    return ridge_closest(model, target, objective, default_lambda_range(model), 200);
}

namespace {

PathSearchResult pls_closest_impl(const Matrix& Xc, const Vector& yc,
                                  const Vector& x_mean, double y_mean,
                                  const CoefficientVector& target,
                                  DistanceObjective objective, int k_max) {
    if (target.beta.size() != Xc.cols()) {
        throw ArgumentError("pls_closest: target length does not match column count");
    }
    const Index rank = matrix_rank(Xc);
    if (k_max < 1 || k_max > rank) {
        throw ArgumentError("pls_closest requires 1 <= k_max <= rank(Xc) = " +
                            std::to_string(rank));
    }

    detail::NipalsSweep sweep = detail::nipals_sweep(Xc, yc, k_max);

    PathSearchResult result;
    result.objective = objective;
    if (sweep.built < k_max) {
        result.truncated = true;
        result.warning = "PLS deflation degenerated at component " +
                         std::to_string(sweep.built + 1) + "; curve truncated";
    }

    int best_k = 0;
    double best_d = 0;
    Vector best_beta;
    for (int k = 1; k <= sweep.built; ++k) {
        const Vector beta = detail::nipals_beta(sweep, k);
        const Vector diff = beta - target.beta;
        const double d = objective == DistanceObjective::prediction_distance
                             ? (Xc * diff).squaredNorm()
                             : diff.squaredNorm();
        result.distance_curve.emplace_back(static_cast<double>(k), d);
        if (best_k == 0 || d < best_d) {
            best_k = k;
            best_d = d;
            best_beta = beta;
        }
    }
    if (best_k == 0) {
        throw NumericError("PLS deflation degenerated before the first component");
    }

    result.k_star = best_k;
    result.distance_at_opt = best_d;
    result.beta_star.beta = std::move(best_beta);
    result.beta_star.intercept = y_mean - x_mean.dot(result.beta_star.beta);
    result.beta_star.label = "pls k=" + std::to_string(best_k);
    return result;
}

}  // namespace

PathSearchResult pls_closest(const CenteredProblem& prob, const CoefficientVector& target,
                             DistanceObjective objective, int k_max) {
    return pls_closest_impl(prob.Xc, prob.yc, prob.x_mean, prob.y_mean, target,
                            objective, k_max);
}

PathSearchResult pls_closest(const Matrix& Xc, const Vector& yc,
                             const CoefficientVector& target,
                             DistanceObjective objective, int k_max) {
    return pls_closest_impl(Xc, yc, Vector::Zero(Xc.cols()), 0.0, target, objective,
                            k_max);
}

NullspaceReport nullspace_report(const RidgePathModel& model,
                                 const CoefficientVector& beta) {
    if (beta.beta.size() != model.p()) {
        throw ArgumentError("nullspace_report: coefficient length " +
                            std::to_string(beta.beta.size()) +
                            " does not match model dimension " + std::to_string(model.p()));
    }
    const Vector in_basis = model.V.transpose() * beta.beta;
    NullspaceReport out;
    out.rowspace_norm = in_basis.norm();
    out.nullspace_norm = (beta.beta - model.V * in_basis).norm();
    out.beta_label = beta.label;
    return out;
}

}  // namespace linfeat
