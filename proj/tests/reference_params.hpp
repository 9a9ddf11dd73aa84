#pragma once

#include "evotune/evalfn.hpp"

// A fixed, sensible tuned weight set. The tests use it as the synthetic
// mentor's hidden target and as a known-good evaluation for frozen examples.
inline evotune::EvalParams reference_params() {
    evotune::EvalParams p;
    const int values[evotune::kParamCount] = {
        83, 322, 323, 478, 954,             // material
        2,  4,  5,  21, 10, 3,  7,  5,  7,  8,
        5,  44, 30, 1,  21, 32, 2,  2,  48, 12,
        6,  7,  3,  0,  27, 17, 12, 11, 3,  8,
    };
    for (int i = 0; i < evotune::kParamCount; ++i) p[i] = values[i];
    return p;
}
