#include "linfeat/features.hpp"

#include <cmath>
#include <numbers>

#include "linfeat/errors.hpp"

namespace linfeat {

double CompressingFeature::value(std::span<const double> x) const {
    const double out = real_fn_(x);
    if (!std::isfinite(out)) {
        throw EvaluationError("feature '" + name_ + "' evaluated to a non-finite value");
    }
    return out;
}

double CompressingFeature::value(const Vector& x) const {
    return value(std::span<const double>(x.data(), static_cast<size_t>(x.size())));
}

DualScalar CompressingFeature::value_dual(std::span<const DualScalar> x) const {
    return dual_fn_(x);
}

CompressingFeature builtin_sum_of_squares() {
    return CompressingFeature("sum_of_squares", [](auto x) {
        return sum_terms(x, [](const auto& v) { return v * v; });
    });
}

CompressingFeature builtin_sinusoidal(double period) {
    if (!(period > 0)) {
        throw ArgumentError("sinusoidal feature requires period > 0");
    }
    const double omega = 2.0 * std::numbers::pi / period;
    return CompressingFeature(
        "sinusoidal",
        [omega](auto x) {
            return sum_terms(x, [omega](const auto& v) {
                using std::sin;
                return sin(omega * v);
            });
        },
        {{"period", period}});
}

CompressingFeature make_feature(const std::string& name,
                                const std::map<std::string, double>& params) {
    if (name == "sum_of_squares") {
        if (!params.empty()) {
            throw ArgumentError("feature 'sum_of_squares' takes no parameters");
        }
        return builtin_sum_of_squares();
    }
    if (name == "sinusoidal") {
        double period = 0.06;
        for (const auto& [key, val] : params) {
            if (key != "period") {
                throw ArgumentError("feature 'sinusoidal': unknown parameter '" + key + "'");
            }
            period = val;
        }
        return builtin_sinusoidal(period);
    }
    throw ArgumentError("unknown feature '" + name + "'");
}

GradientVector gradient(const CompressingFeature& f, const Vector& x) {
    const Index p = x.size();
    std::vector<DualScalar> seeded(static_cast<size_t>(p));
    for (Index j = 0; j < p; ++j) seeded[static_cast<size_t>(j)] = DualScalar{x(j), 0.0};

    GradientVector out;
    out.values.resize(p);
    out.anchor = x;
    for (Index j = 0; j < p; ++j) {
        seeded[static_cast<size_t>(j)].deriv = 1.0;
        const DualScalar r = f.value_dual(seeded);
        seeded[static_cast<size_t>(j)].deriv = 0.0;
        if (!std::isfinite(r.value) || !std::isfinite(r.deriv)) {
            throw EvaluationError("feature '" + f.name() +
                                  "': non-finite value differentiating component " +
                                  std::to_string(j));
        }
        out.values(j) = r.deriv;
    }
    return out;
}

GradientVector gradient_fd(const CompressingFeature& f, const Vector& x,
                           double rel_step) {
    if (!(rel_step > 0)) {
        throw ArgumentError("gradient_fd requires rel_step > 0");
    }
    const Index p = x.size();
    GradientVector out;
    out.values.resize(p);
    out.anchor = x;
    Vector probe = x;
    for (Index j = 0; j < p; ++j) {
        const double h = rel_step * (1.0 + std::abs(x(j)));
        probe(j) = x(j) + h;
        const double fp = f.value(probe);
        probe(j) = x(j) - h;
        const double fm = f.value(probe);
        probe(j) = x(j);
        out.values(j) = (fp - fm) / (2.0 * h);
    }
    return out;
}

}  // namespace linfeat
