#pragma once

#include "linfeat/dataset.hpp"
#include "linfeat/features.hpp"

namespace linfeat {

/// First-order expansion of a feature around the training column mean:
/// z_i = g(x_mean) + (x_i - x_mean) . grad g(x_mean).
struct LinearizedFeature {
    Vector z;                 ///< length n
    double anchor_value = 0;  ///< g(x_mean)
    Vector x_mean;
    Vector gradient_at_mean;
};

/// Univariate OLS of centered responses on centered linearized features.
struct SlopeFit {
    double slope = 0;  ///< m
    Vector residuals;  ///< (y - y_mean) - m (z - z_mean)
    double z_mean = 0;
    double y_mean = 0;
};

/// Everything the linearization yields: the feature coefficients
/// beta_t1 = slope * gradient_at_mean and the pieces they were built from.
struct FeatureCoefficients {
    double anchor_value = 0;
    Vector z;
    double z_mean = 0;
    double slope = 0;
    Vector beta_t1;
    Vector residuals;
    Vector gradient_at_mean;
    Vector x_mean;
    double y_mean = 0;
};

/// Evaluates the expansion at the dataset's column mean (the anchor is always
/// x_mean). Feature evaluation errors propagate with the sample index.
LinearizedFeature linearize(const FunctionalDataset& ds,
                            const CompressingFeature& f);

/// m = sum((z - z_mean)(y - y_mean)) / sum((z - z_mean)^2). Requires n >= 2
/// and non-degenerate variance of z: var(z) <= 1e-14 * max(z^2) throws
/// NumericError (the feature is constant over the samples).
SlopeFit fit_slope(const Vector& z, const Vector& y);

/// Composes linearize, gradient, and fit_slope.
FeatureCoefficients feature_coefficients(const FunctionalDataset& ds,
                                         const CompressingFeature& f,
                                         const Vector& y);

}  // namespace linfeat
