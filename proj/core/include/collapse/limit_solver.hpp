#pragma once

#include <functional>
#include <vector>

#include "collapse/geometry.hpp"
#include "collapse/thermo.hpp"

namespace collapse {

enum class LimitModel { navier_stokes, euler };

struct LimitConfig {
    PressureLaw law;
    double mu = 0.05;
    double eta = 0.05;
    int ambient_dim = 2;  // N, enters the bulk coefficient eta + (N-2) mu / N
    LimitModel model = LimitModel::navier_stokes;
    bool geometric_term = true;  // the (log A)-Hessian term; off only for comparisons
    double cfl = 0.5;
    double kappa4 = 0.01;  // fourth-difference dissipation coefficient
    double t_end = 0.25;
    double sample_dt = 0.01;
    // Abort when min u_x <= -watch_rate (0 disables). Euler runs default to 1/T.
    double watch_rate = 0.0;
    // Optional manufactured sources for d_t(rho A) and d_t(rho u A).
    std::function<void(double x, double t, double& f_mass, double& f_mom)> forcing;
};

// Nodal state on the base: x_k = k/n, k < n on a circle, k <= n on an interval.
struct LimitState {
    bool periodic = true;
    int n = 0;
    double t = 0.0;
    std::vector<double> x, rho, u;
};

struct LimitSample {
    double t = 0.0;
    std::vector<double> rho, u, drho_dt, du_dt;
};

struct ClassicalCertificate {
    double Lambda = 0.0;  // max over steps of max|u| + max|u_x| + max|u_xx|
    double rho_min = 0.0;
    double rho_max = 0.0;
};

struct LimitTrajectory {
    bool periodic = true;
    int n = 0;
    std::vector<double> x;
    std::vector<LimitSample> samples;
    ClassicalCertificate certificate;
    long steps = 0;
};

class LimitSolver {
public:
    LimitSolver(FiberProfile profile, LimitConfig cfg, int n);

    const FiberProfile& profile() const { return profile_; }
    const LimitConfig& config() const { return cfg_; }
    int n() const { return n_; }
    int nodes() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& x() const { return x_; }

    LimitState initial(const std::function<double(double)>& rho0,
                       const std::function<double(double)>& u0) const;

    // Time derivatives of rho and u at the nodes.
    void time_derivatives(const LimitState& s, std::vector<double>& drho, std::vector<double>& du) const;

    double stable_dt(const LimitState& s) const;

    // Advances to t_end, storing samples every sample_dt (and at t = 0).
    LimitTrajectory run(const LimitState& s0) const;

    // One SSP RK3 step of size dt.
    void step(LimitState& s, double dt) const;

private:
    void rhs(const std::vector<double>& m, const std::vector<double>& q, double t,
             std::vector<double>& dm, std::vector<double>& dq) const;

    FiberProfile profile_;
    LimitConfig cfg_;
    int n_;
    double h_;
    bool periodic_;
    std::vector<double> x_, A_, g_;
};

// Trapezoid (interval) or rectangle (circle) quadrature of rho A per sample.
std::vector<double> weighted_mass(const LimitTrajectory& traj, const FiberProfile& profile);
double weighted_mass(const LimitState& s, const FiberProfile& profile);

// Second-order nodal derivatives of a base field (one-sided at interval ends).
std::vector<double> base_derivative(const std::vector<double>& f, double h, bool periodic, int order);

}  // namespace collapse
