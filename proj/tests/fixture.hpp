#pragma once

// The shared fixture dataset and values frozen from independent plain-loop
// computations (see oracles.hpp for the oracle implementations).

#include "linfeat/dataset.hpp"

namespace fixture {

inline linfeat::SynthesisSpec spec() {
    linfeat::SynthesisSpec s;
    s.n = 40;
    s.p = 200;
    s.smoothness = 0.15;
    s.rank = 5;
    s.noise_std = 1e-4;
    s.seed = 7;
    return s;
}

inline const linfeat::FunctionalDataset& dataset() {
    static const linfeat::FunctionalDataset ds = linfeat::synthesize(spec());
    return ds;
}

// Column means of the fixture, computed once by straightforward accumulation.
inline constexpr double kXbar0 = 0.098808644794508391;
inline constexpr double kXbar50 = 0.062176040292520461;
inline constexpr double kXbar100 = -0.34255463972281552;
inline constexpr double kXbar150 = -0.044934446092872213;
inline constexpr double kXbar199 = 0.053813068741425232;
inline constexpr double kXbarMean = -0.055970064534737095;
inline constexpr double kXbarNorm = 2.5446952457899275;

// Feature values at the column mean, by separate accumulation loops.
inline constexpr double kSumOfSquaresAtXbar = 6.4754738939458587;
inline constexpr double kSinusoidalAtXbar = 13.714235669653497;

// Sinusoidal case with y_i = g(x_i): slope and training R^2 of the
// linearized predictions, both from the hand-rolled formulas.
inline constexpr double kSinSlope = -0.0007612017897238733;
inline constexpr double kSinTrainingR2 = 0.034194625356999131;

}  // namespace fixture
