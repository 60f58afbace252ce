#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "linfeat/dual.hpp"
#include "linfeat/types.hpp"

namespace linfeat {

/// A differentiable map from a sampled curve to one scalar. The expression is
/// written once over a generic scalar and instantiated for plain doubles and
/// for forward-mode duals, so gradients need no separate derivation.
class CompressingFeature {
public:
    using RealFn = std::function<double(std::span<const double>)>;
    using DualFn = std::function<DualScalar(std::span<const DualScalar>)>;

    /// `fn` must be callable as fn(std::span<const T>) -> T for T in
    /// {double, DualScalar}, e.g. a generic lambda over sum_terms.
    template <class Fn>
    CompressingFeature(std::string name, Fn fn,
                       std::map<std::string, double> params = {})
        : name_(std::move(name)),
          params_(std::move(params)),
          real_fn_(fn),
          dual_fn_(std::move(fn)) {}

    /// Evaluate on a plain curve. Throws EvaluationError on a non-finite result.
    double value(std::span<const double> x) const;
    double value(const Vector& x) const;

    /// Evaluate on a dual curve (one seeded direction). No finiteness check;
    /// gradient() checks and names the offending component.
    DualScalar value_dual(std::span<const DualScalar> x) const;

    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }

private:
    std::string name_;
    std::map<std::string, double> params_;
    RealFn real_fn_;
    DualFn dual_fn_;
};

/// g(x) = sum_j x_j^2.
CompressingFeature builtin_sum_of_squares();

/// g(x) = sum_j sin((2*pi/period) * x_j). Throws ArgumentError for period <= 0.
CompressingFeature builtin_sinusoidal(double period = 0.06);

/// Config-driven lookup: "sum_of_squares" (no params) or "sinusoidal"
/// (optional "period"). Throws ArgumentError for unknown names or params.
CompressingFeature make_feature(const std::string& name,
                                const std::map<std::string, double>& params = {});

struct GradientVector {
    Vector values;  ///< one derivative per curve component
    Vector anchor;  ///< the point the gradient was evaluated at
};

/// Exact gradient: one forward pass per component, seeding direction e_j.
/// Throws EvaluationError naming the component on a non-finite result.
GradientVector gradient(const CompressingFeature& f, const Vector& x);

/// Central finite differences with per-component step
/// h_j = rel_step * (1 + |x_j|). The independent slow route used to
/// cross-check the dual-number gradient.
GradientVector gradient_fd(const CompressingFeature& f, const Vector& x,
                           double rel_step);

}  // namespace linfeat
