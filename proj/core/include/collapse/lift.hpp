#pragma once

#include <functional>
#include <vector>

#include "collapse/geometry.hpp"

namespace collapse {

// beta such that beta n + (Xhat, 0) is tangent to the lateral wall at x.
// Works in the meridian plane for disk fibres.
double beta(const FiberProfile& p, double x, Side side, double xhat, double eps = 1.0);

// beta n + (Xhat, 0)
Vec2 lifted_boundary_vector(const FiberProfile& p, double x, Side side, double xhat, double eps = 1.0);

// Vertical part of the lift over one fibre. For interval fibres V(y) = c y,
// for disk fibres V(r) = c r (radial), with c = Xhat A'/(d A).
struct FiberPotential {
    double x = 0.0;
    int fiber_dim = 1;
    double coeff = 0.0;
    double half_width = 0.0;  // A/2 or R
    double value(double y) const { return coeff * y; }
    // div_F V: d * coeff
    double divergence() const { return fiber_dim * coeff; }
};

// Closed-form potential. Verifies the compatibility condition (fibre
// integral of Xhat (log A)' against the boundary flux of the lifted field)
// to the given relative tolerance.
FiberPotential solve_fiber_neumann(const FiberProfile& p, double x, double xhat, double tol = 1e-10);

// U'' = f on [lo, hi], U'(lo) = flux_lo, U'(hi) = flux_hi, zero mean.
struct NeumannSolution {
    std::vector<double> y, U, dU;
    double compatibility_defect = 0.0;  // trapezoid integral of f minus (flux_hi - flux_lo)
    double divergence_residual = 0.0;   // max |D1 dU - f| at interior nodes
};

NeumannSolution solve_neumann_1d(double lo, double hi, const std::function<double(double)>& f,
                                 double flux_lo, double flux_hi, int n);

// Sampled fibre potential for interval fibres: V = U' on n+1 nodes.
NeumannSolution solve_fiber_neumann_sampled(const FiberProfile& p, double x, double xhat, int n);

// Canonical lift of a base velocity at a physical point of the thin domain:
// (uhat, uhat (A'/A) y) for interval fibres.
inline Vec2 lift_at(const FiberProfile& p, double x, double y, double uhat) {
    return {uhat, uhat * p.dlog_area(x) * y};
}

// Lift sampled at the cell centres of a grid.
struct LiftField {
    double eps = 0.0;
    std::vector<double> u, v;  // per cell, index i*ns + j
};

// uhat holds one value per cell column.
LiftField lift_field(const ThinGrid& grid, const std::vector<double>& uhat);

struct FlowAreaCheck {
    double area_flow = 0.0;      // A(x0) times the Jacobian of the fibre flow
    double area_boundary = 0.0;  // measure spanned by the flowed boundary points
    double area_direct = 0.0;    // A(x0 + t)
    double rate_boundary = 0.0;  // boundary integral of the lifted field's normal part
    double rate_direct = 0.0;    // A'(x0 + t)
};

// Flows the unit-speed lift for time t_end with classical RK4.
FlowAreaCheck flow_area_check(const FiberProfile& p, double x0, double t_end, double step = 1e-3);

// max |d_t rho + div(rho U)| over interior nodes of a physical (x, s) lattice.
// rho, u and drho_dt are sampled at base nodes x_k = k h, h = 1/n, with
// k < n on a circle and k <= n on an interval.
double lifted_continuity_residual(const FiberProfile& p, double eps, const std::vector<double>& rho,
                                  const std::vector<double>& u, const std::vector<double>& drho_dt,
                                  int ns);

}  // namespace collapse
