#pragma once

#include <functional>
#include <vector>

#include "collapse/limit_solver.hpp"
#include "collapse/thermo.hpp"
#include "collapse/thin_solver.hpp"

namespace collapse {

// Limit fields and the derivatives the meter needs, one entry per thin cell column.
struct LimitColumns {
    std::vector<double> rho, rho_x, rho_t, u, u_x, u_xx, u_t;
    void resize(int n);
};

// Picks the limit nodes that coincide with the thin cell centres (the limit
// resolution must be a multiple of 2 nx) and differentiates on the limit grid.
LimitColumns columns_from_trajectory(const LimitTrajectory& traj, std::size_t sample, const ThinGrid& grid);

struct LimitPoint {
    double rho = 1.0, rho_x = 0.0, rho_t = 0.0, u = 0.0, u_x = 0.0, u_xx = 0.0, u_t = 0.0;
};
LimitColumns columns_from_function(const ThinGrid& grid, const std::function<LimitPoint(double x)>& f);

struct MeterParams {
    Renormalization renorm{PressureLaw{}, 1.0};
    double mu = 0.05;
    double eta = 0.05;
    int ambient_dim = 2;
};

struct EntropyReport {
    double t = 0.0;
    double measure = 0.0;      // discrete |O_eps|
    double E_vs_uhat = 0.0;    // against (rho_hat, (u_hat, 0))
    double E_vs_lift = 0.0;    // against (rho_hat, U_eps)
    double E_normalized = 0.0; // E_vs_uhat / measure
    double E_lift_normalized = 0.0;
    double I = 0.0, II = 0.0, III = 0.0, IV = 0.0, V = 0.0;
    double remainder = 0.0;    // the remainder integrand of the entropy inequality, integrated
    double dissipation = 0.0;  // integral of S(grad w):grad w, w = u - U_eps
    double min_dissipation_density = 0.0;
    double sum_terms() const { return I + II + III + IV + V; }
};

// Meters a thin state against limit columns; grads are the state's velocity
// gradients (ThinSolver::velocity_gradients).
EntropyReport meter(const ThinGrid& grid, const FluidState& state, const std::vector<Mat2>& grads,
                    const LimitColumns& limit, const MeterParams& params);

enum class Against { uhat, lift };
double relative_entropy(const ThinGrid& grid, const FluidState& state, const LimitColumns& limit,
                        const Renormalization& renorm, Against against);

// Mean fibre integral of rho |u - U_eps| (the weight in the III bound).
double weighted_lift_distance(const ThinGrid& grid, const FluidState& state, const LimitColumns& limit);

struct SlackSeries {
    std::vector<double> t, slack, cum_remainder, cum_dissipation;
    double min_slack = 0.0;  // most negative value (0 if never negative)
};

// slack(t) = E(0) + int R - E(t) - int dissipation, trapezoid rule in time,
// divided by the domain measure.
SlackSeries inequality_check(const std::vector<EntropyReport>& reports);

// Total energy: integral of 1/2 rho |u|^2 + H(rho).
double total_energy(const FluidState& state, const Renormalization& renorm);

}  // namespace collapse
