#pragma once

// NIPALS sweep shared by pls_fit, pls_closest, and cv_pls.

#include "linfeat/types.hpp"

namespace linfeat::detail {

struct NipalsSweep {
    Matrix weights;   // p x built
    Matrix scores;    // n x built
    Matrix loadings;  // p x built
    Vector q;         // built
    int built = 0;    // components completed before any degeneration
    bool degenerate = false;
};

/// Runs up to k_max components of PLS1 NIPALS with X and y deflation:
/// w = Xd^T yd normalized, t = Xd w, p = Xd^T t / (t^T t), q = yd^T t / (t^T t),
/// then deflate Xd and yd. Stops early (degenerate = true) when the weight or
/// score norm collapses relative to the first component.
NipalsSweep nipals_sweep(const Matrix& Xc, const Vector& yc, int k_max);

/// beta = W_k (P_k^T W_k)^{-1} q_k using the first k components of a sweep.
Vector nipals_beta(const NipalsSweep& sweep, int k);

}  // namespace linfeat::detail
