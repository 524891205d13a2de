#pragma once

#include "collapse/geometry.hpp"

namespace collapse {

struct KornEstimate {
    double epsilon = 0.0;
    double constant = 0.0;  // smallest a/b above the kernel threshold
    int kernel_dim = 0;     // Ritz values with a <= 1e-10 b
    int iterations = 0;
    bool converged = false;
    double last_quotient = 0.0;
};

// P1 finite elements on the triangulated vertex lattice of the grid:
// a = int |D(grad phi)|^2, b = int |phi|^2 + |grad phi|^2 over vector fields
// tangent to the lateral walls (and zero at interval ends). Lowest modes by
// shift-invert subspace iteration.
KornEstimate korn_estimate(const ThinGrid& grid, int n_iter = 200, int block = 6);

}  // namespace collapse
