#pragma once

#include <cstdint>
#include <vector>

#include "linfeat/dataset.hpp"
#include "linfeat/regression.hpp"

namespace linfeat {

/// Which regularization parameter the CV grid indexes. Larger lambda means
/// more regularization; larger k means less.
enum class CvGridKind { ridge_lambda, pls_components };

enum class SelectionRule { min, one_se };

struct CvCurve {
    CvGridKind kind = CvGridKind::ridge_lambda;
    std::vector<double> grid;        ///< lambda values, or k values stored as doubles
    std::vector<double> mean_error;  ///< per-grid-point mean RMSE across folds
    std::vector<double> se;          ///< sample std across folds / sqrt(folds)
    Matrix per_fold_error;           ///< grid.size() x folds
    std::vector<int> fold_assignment;
    std::uint64_t seed = 0;
    /// Fold-trained coefficient vectors [grid index][fold], populated only
    /// when requested; lets tests pin down fold re-centering.
    std::vector<std::vector<CoefficientVector>> fold_betas;
};

/// Seeded shuffle, round-robin assignment; fold sizes differ by at most 1.
std::vector<int> fold_assignment(Index n, int folds, std::uint64_t seed);

/// k-fold CV over a ridge lambda grid. Each fold re-centers its own training
/// rows, fits one path model, and scores held-out RMSE per lambda. Requires
/// folds >= 2 and every fold to have at least 2 samples.
CvCurve cv_ridge(const FunctionalDataset& ds, const Vector& y,
                 const std::vector<double>& lambda_grid, int folds = 10,
                 std::uint64_t seed = 0, bool keep_fold_models = false);

/// Same over PLS component counts k = 1..k_max. k_max must not exceed any
/// fold-training rank.
CvCurve cv_pls(const FunctionalDataset& ds, const Vector& y, int k_max,
               int folds = 10, std::uint64_t seed = 0,
               bool keep_fold_models = false);

/// min: grid value with the smallest mean error, ties toward more
/// regularization. one_se: the most regularized grid value whose mean error
/// is within one standard error of the minimum.
double select(const CvCurve& curve, SelectionRule rule);

/// 60 log-spaced points over [1e-8 * s1^2, 1e4 * s1^2].
std::vector<double> default_lambda_grid(double s1, int points = 60);

}  // namespace linfeat
