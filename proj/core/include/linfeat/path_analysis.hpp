#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linfeat/regression.hpp"

namespace linfeat {

/// What "closest" means along the solution path: distance between coefficient
/// vectors, or between the training predictions they induce. The latter is
/// blind to nullspace components of the target.
enum class DistanceObjective { coefficient_distance, prediction_distance };

struct LambdaRange {
    double lo = 0;
    double hi = 0;
};

/// Outcome of a closest-point search over a solution path. Exactly one of
/// lambda_star / k_star is set. distance_curve holds the evaluated sweep
/// points as-is; distance_at_opt never exceeds any of them.
struct PathSearchResult {
    DistanceObjective objective = DistanceObjective::coefficient_distance;
    std::optional<double> lambda_star;
    std::optional<int> k_star;
    double distance_at_opt = 0;
    std::vector<std::pair<double, double>> distance_curve;  ///< (lambda or k, squared distance)
    CoefficientVector beta_star;
    bool truncated = false;  ///< PLS deflation degenerated before k_max
    std::string warning;
};

/// Spans the effective shrinkage range of the closed form:
/// [1e-10 * s1^2, 1e8 * s1^2].
LambdaRange default_lambda_range(const RidgePathModel& model);

/// Two-stage search: log-spaced sweep of d(lambda) over
/// [max(range.lo, 1e-12 * s1^2), range.hi], then golden-section refinement
/// around the best sweep point to relative lambda tolerance 1e-6. Both
/// objectives are evaluated in the SVD basis in O(r) per lambda. Exact ties
/// resolve to the smaller lambda. Requires 0 <= lo < hi and grid_points >= 16.
PathSearchResult ridge_closest(const RidgePathModel& model,
                               const CoefficientVector& target,
                               DistanceObjective objective,
                               const LambdaRange& range, int grid_points = 200);

PathSearchResult ridge_closest(const RidgePathModel& model,
                               const CoefficientVector& target,
                               DistanceObjective objective);

/// Exhaustive d(k) for k = 1..k_max; ties break toward smaller k (more
/// regularization). Requires 1 <= k_max <= rank(Xc). If deflation degenerates
/// before k_max the curve is truncated and the result carries a warning.
PathSearchResult pls_closest(const CenteredProblem& prob,
                             const CoefficientVector& target,
                             DistanceObjective objective, int k_max);

PathSearchResult pls_closest(const Matrix& Xc, const Vector& yc,
                             const CoefficientVector& target,
                             DistanceObjective objective, int k_max);

/// Norms of a coefficient vector's projections onto the row space of the
/// fitted data (span of V) and its orthogonal complement.
struct NullspaceReport {
    double rowspace_norm = 0;
    double nullspace_norm = 0;
    std::string beta_label;
};

NullspaceReport nullspace_report(const RidgePathModel& model,
                                 const CoefficientVector& beta);

}  // namespace linfeat
