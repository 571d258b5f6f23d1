#pragma once

#include "cvqkd/constellation.hpp"

namespace cvqkd {

struct NuOptResult {
    double nu_star;
    double min_distance; // trace distance at nu_star
    int nmax_used;
};

/// Choose the Maxwell-Boltzmann exponent minimizing the trace distance between
/// the modulated state at the given (order, V_A) and the thermal state of the
/// Gaussian modulation with the same V_A.
///
/// Coarse 40-point log-spaced scan over nu in [0, 2] followed by
/// golden-section refinement between the best grid point's neighbors.
NuOptResult optimize_nu(int order, double target_VA, double nu_tol = 1e-4,
                        int nmax_cap = 256);

} // namespace cvqkd
