#include "linfeat/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "linfeat/errors.hpp"
#include "pls_internal.hpp"

namespace linfeat {

std::vector<int> fold_assignment(Index n, int folds, std::uint64_t seed) {
    std::vector<Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<int> assignment(static_cast<size_t>(n));
    for (size_t pos = 0; pos < order.size(); ++pos) {
        assignment[static_cast<size_t>(order[pos])] = static_cast<int>(pos % folds);
    }
    return assignment;
}

namespace {

struct FoldData {
    Matrix x_train;
    Vector y_train;
    Matrix x_held;
    Vector y_held;
};

FoldData gather_fold(const FunctionalDataset& ds, const Vector& y,
                     const std::vector<int>& assignment, int fold) {
    const Index n = ds.n();
    Index n_held = 0;
    for (int a : assignment) n_held += (a == fold);
    const Index n_train = n - n_held;

    FoldData out;
    out.x_train.resize(n_train, ds.p());
    out.y_train.resize(n_train);
    out.x_held.resize(n_held, ds.p());
    out.y_held.resize(n_held);

    Index it = 0;
    Index ih = 0;
    for (Index i = 0; i < n; ++i) {
        if (assignment[static_cast<size_t>(i)] == fold) {
            out.x_held.row(ih) = ds.values.row(i);
            out.y_held(ih) = y(i);
            ++ih;
        } else {
            out.x_train.row(it) = ds.values.row(i);
            out.y_train(it) = y(i);
            ++it;
        }
    }
    return out;
}

double rmse(const Vector& yhat, const Vector& y) {
    return std::sqrt((yhat - y).squaredNorm() / static_cast<double>(y.size()));
}

void validate_cv_args(const FunctionalDataset& ds, const Vector& y, int folds) {
    if (folds < 2) {
        throw ArgumentError("cross-validation requires folds >= 2");
    }
    if (ds.n() < folds) {
        throw ArgumentError("cross-validation requires n >= folds");
    }
    if (ds.n() / folds < 2) {
        throw ArgumentError("cross-validation fold would have fewer than 2 samples");
    }
    if (y.size() != ds.n()) {
        throw ArgumentError("response length does not match sample count");
    }
}

void finalize_curve(CvCurve& curve, int folds) {
    const Index g = curve.per_fold_error.rows();
    curve.mean_error.resize(static_cast<size_t>(g));
    curve.se.resize(static_cast<size_t>(g));
    for (Index i = 0; i < g; ++i) {
        const double mean = curve.per_fold_error.row(i).mean();
        const double ss = (curve.per_fold_error.row(i).array() - mean).square().sum();
        const double sd = std::sqrt(ss / static_cast<double>(folds - 1));
        curve.mean_error[static_cast<size_t>(i)] = mean;
        curve.se[static_cast<size_t>(i)] = sd / std::sqrt(static_cast<double>(folds));
    }
}

}  // namespace

CvCurve cv_ridge(const FunctionalDataset& ds, const Vector& y,
                 const std::vector<double>& lambda_grid, int folds,
                 std::uint64_t seed, bool keep_fold_models) {
    validate_cv_args(ds, y, folds);
    if (lambda_grid.empty()) {
        throw ArgumentError("cv_ridge requires a nonempty lambda grid");
    }
    for (double lambda : lambda_grid) {
        if (!(lambda >= 0)) throw ArgumentError("cv_ridge: lambda values must be >= 0");
    }

    CvCurve curve;
    curve.kind = CvGridKind::ridge_lambda;
    curve.grid = lambda_grid;
    curve.seed = seed;
    curve.fold_assignment = fold_assignment(ds.n(), folds, seed);
    curve.per_fold_error.resize(static_cast<Index>(lambda_grid.size()), folds);
    if (keep_fold_models) {
        curve.fold_betas.assign(lambda_grid.size(),
                                std::vector<CoefficientVector>(static_cast<size_t>(folds)));
    }

    for (int f = 0; f < folds; ++f) {
        const FoldData fold = gather_fold(ds, y, curve.fold_assignment, f);
        // Centering statistics come from the fold's own training rows only.
        const CenteredProblem prob = center_problem(fold.x_train, fold.y_train);
        const RidgePathModel model = ridge_fit(prob);
        for (size_t g = 0; g < lambda_grid.size(); ++g) {
            CoefficientVector coef = ridge_beta(model, lambda_grid[g]);
            curve.per_fold_error(static_cast<Index>(g), f) =
                rmse(predict(coef, fold.x_held), fold.y_held);
            if (keep_fold_models) {
                curve.fold_betas[g][static_cast<size_t>(f)] = std::move(coef);
            }
        }
    }

    finalize_curve(curve, folds);
    return curve;
}

CvCurve cv_pls(const FunctionalDataset& ds, const Vector& y, int k_max, int folds,
               std::uint64_t seed, bool keep_fold_models) {
    validate_cv_args(ds, y, folds);
    if (k_max < 1) {
        throw ArgumentError("cv_pls requires k_max >= 1");
    }

    CvCurve curve;
    curve.kind = CvGridKind::pls_components;
    curve.grid.resize(static_cast<size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) curve.grid[static_cast<size_t>(k - 1)] = k;
    curve.seed = seed;
    curve.fold_assignment = fold_assignment(ds.n(), folds, seed);
    curve.per_fold_error.resize(k_max, folds);
    if (keep_fold_models) {
        curve.fold_betas.assign(static_cast<size_t>(k_max),
                                std::vector<CoefficientVector>(static_cast<size_t>(folds)));
    }

    for (int f = 0; f < folds; ++f) {
        const FoldData fold = gather_fold(ds, y, curve.fold_assignment, f);
        const CenteredProblem prob = center_problem(fold.x_train, fold.y_train);
        if (k_max > matrix_rank(prob.Xc)) {
            throw ArgumentError("cv_pls: k_max=" + std::to_string(k_max) +
                                " exceeds fold-training rank " +
                                std::to_string(matrix_rank(prob.Xc)));
        }
        const detail::NipalsSweep sweep = detail::nipals_sweep(prob.Xc, prob.yc, k_max);
        if (sweep.built < k_max) {
            throw NumericError("cv_pls: PLS deflation degenerated at component " +
                               std::to_string(sweep.built + 1));
        }
        for (int k = 1; k <= k_max; ++k) {
            CoefficientVector coef;
            coef.beta = detail::nipals_beta(sweep, k);
            coef.intercept = prob.y_mean - prob.x_mean.dot(coef.beta);
            coef.label = "pls k=" + std::to_string(k);
            curve.per_fold_error(k - 1, f) = rmse(predict(coef, fold.x_held), fold.y_held);
            if (keep_fold_models) {
                curve.fold_betas[static_cast<size_t>(k - 1)][static_cast<size_t>(f)] =
                    std::move(coef);
            }
        }
    }

    finalize_curve(curve, folds);
    return curve;
}

double select(const CvCurve& curve, SelectionRule rule) {
    if (curve.grid.empty() || curve.grid.size() != curve.mean_error.size() ||
        curve.grid.size() != curve.se.size()) {
        throw ArgumentError("select requires a nonempty, consistent CV curve");
    }

    const auto more_regularized = [&](double a, double b) {
        return curve.kind == CvGridKind::ridge_lambda ? a > b : a < b;
    };

    size_t best = 0;
    for (size_t i = 1; i < curve.grid.size(); ++i) {
        if (curve.mean_error[i] < curve.mean_error[best] ||
            (curve.mean_error[i] == curve.mean_error[best] &&
             more_regularized(curve.grid[i], curve.grid[best]))) {
            best = i;
        }
    }
    if (rule == SelectionRule::min) return curve.grid[best];

    const double threshold = curve.mean_error[best] + curve.se[best];
    size_t chosen = best;
    for (size_t i = 0; i < curve.grid.size(); ++i) {
        if (curve.mean_error[i] <= threshold &&
            more_regularized(curve.grid[i], curve.grid[chosen])) {
            chosen = i;
        }
    }
    return curve.grid[chosen];
}

std::vector<double> default_lambda_grid(double s1, int points) {
    if (!(s1 > 0)) {
        throw ArgumentError("default_lambda_grid requires s1 > 0");
    }
    if (points < 2) {
        throw ArgumentError("default_lambda_grid requires points >= 2");
    }
    const double lo = std::log(1e-8 * s1 * s1);
    const double hi = std::log(1e4 * s1 * s1);
    std::vector<double> grid(static_cast<size_t>(points));
    for (int g = 0; g < points; ++g) {
        grid[static_cast<size_t>(g)] =
            std::exp(lo + (hi - lo) * static_cast<double>(g) /
                              static_cast<double>(points - 1));
    }
    return grid;
}

}  // namespace linfeat
