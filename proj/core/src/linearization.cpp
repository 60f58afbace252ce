#include "linfeat/linearization.hpp"

#include <cmath>

#include "linfeat/errors.hpp"

namespace linfeat {

LinearizedFeature linearize(const FunctionalDataset& ds, const CompressingFeature& f) {
    LinearizedFeature out;
    out.x_mean = ds.values.colwise().mean();
    out.anchor_value = f.value(out.x_mean);
    out.gradient_at_mean = gradient(f, out.x_mean).values;

    out.z = ((ds.values.rowwise() - out.x_mean.transpose()) * out.gradient_at_mean)
                .array() +
            out.anchor_value;
    for (Index i = 0; i < out.z.size(); ++i) {
        if (!std::isfinite(out.z(i))) {
            throw EvaluationError("feature '" + f.name() +
                                  "': non-finite linearized value for sample " +
                                  std::to_string(i));
        }
    }
    return out;
}

SlopeFit fit_slope(const Vector& z, const Vector& y) {
    if (z.size() != y.size()) {
        throw ArgumentError("fit_slope: z and y lengths differ (" +
                            std::to_string(z.size()) + " vs " + std::to_string(y.size()) + ")");
    }
    const Index n = z.size();
    if (n < 2) {
        throw ArgumentError("fit_slope requires at least 2 samples");
    }

    SlopeFit out;
    out.z_mean = z.mean();
    out.y_mean = y.mean();

    const Vector zc = z.array() - out.z_mean;
    const Vector yc = y.array() - out.y_mean;
    const double szz = zc.squaredNorm();
    const double max_z_sq = z.array().square().maxCoeff();
    if (szz / static_cast<double>(n) <= 1e-14 * max_z_sq) {
        throw NumericError(
            "degenerate feature: linearized feature is constant over the samples");
    }

    out.slope = zc.dot(yc) / szz;
    out.residuals = yc - out.slope * zc;
    return out;
}

FeatureCoefficients feature_coefficients(const FunctionalDataset& ds,
                                         const CompressingFeature& f,
                                         const Vector& y) {
    if (y.size() != ds.n()) {
        throw ArgumentError("response length " + std::to_string(y.size()) +
                            " does not match sample count " + std::to_string(ds.n()));
    }
    LinearizedFeature lin = linearize(ds, f);
    SlopeFit fit = fit_slope(lin.z, y);

    FeatureCoefficients out;
    out.anchor_value = lin.anchor_value;
    out.z = std::move(lin.z);
    out.z_mean = fit.z_mean;
    out.slope = fit.slope;
    out.beta_t1 = fit.slope * lin.gradient_at_mean;
    out.residuals = std::move(fit.residuals);
    out.gradient_at_mean = std::move(lin.gradient_at_mean);
    out.x_mean = std::move(lin.x_mean);
    out.y_mean = fit.y_mean;
    return out;
}

}  // namespace linfeat
