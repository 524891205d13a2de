#include "collapse/lift.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace collapse {

double beta(const FiberProfile& p, double x, Side side, double xhat, double eps) {
    const BoundaryFrame f = boundary_frame(p, eps, x, side);
    const double nn = f.n.dot(f.nu);
    if (std::abs(nn) < 1e-300) throw SolverError("beta: fibre direction is tangent to the boundary");
    return -Vec2(xhat, 0.0).dot(f.nu) / nn;
}

Vec2 lifted_boundary_vector(const FiberProfile& p, double x, Side side, double xhat, double eps) {
    const BoundaryFrame f = boundary_frame(p, eps, x, side);
    return beta(p, x, side, xhat, eps) * f.n + Vec2(xhat, 0.0);
}

FiberPotential solve_fiber_neumann(const FiberProfile& p, double x, double xhat, double tol) {
    FiberPotential v;
    v.x = x;
    v.fiber_dim = p.fiber_dim();
    v.half_width = p.fiber() == FiberKind::disk ? p.shape(x) : 0.5 * p.area(x);
    v.coeff = xhat * p.dlog_area(x) / v.fiber_dim;

    const double interior = xhat * p.dlog_area(x) * p.area(x);
    const double b = beta(p, x, Side::top, xhat);
    const double boundary =
        p.fiber() == FiberKind::disk ? 2.0 * std::numbers::pi * v.half_width * b : 2.0 * b;
    if (std::abs(interior - boundary) > tol * (1.0 + std::abs(interior)))
        throw SolverError("fibre Neumann problem: incompatible data (inconsistent profile derivatives)");
    return v;
}

NeumannSolution solve_neumann_1d(double lo, double hi, const std::function<double(double)>& f,
                                 double flux_lo, double flux_hi, int n) {
    require(n >= 2 && hi > lo, "neumann: need n >= 2 and hi > lo");
    const double h = (hi - lo) / n;
    NeumannSolution out;
    out.y.resize(n + 1);
    std::vector<double> fv(n + 1);
    for (int k = 0; k <= n; ++k) {
        out.y[k] = lo + k * h;
        fv[k] = f(out.y[k]);
    }
    double integral = 0.5 * (fv[0] + fv[n]);
    for (int k = 1; k < n; ++k) integral += fv[k];
    integral *= h;
    out.compatibility_defect = integral - (flux_hi - flux_lo);

    // nodal Laplacian with ghost-node Neumann rows, bordered by the mean constraint
    const int m = n + 2;
    std::vector<Eigen::Triplet<double>> t;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    const double ih2 = 1.0 / (h * h);
    for (int k = 0; k <= n; ++k) {
        if (k == 0) {
            t.emplace_back(0, 0, -2.0 * ih2);
            t.emplace_back(0, 1, 2.0 * ih2);
            rhs[0] = fv[0] + 2.0 * flux_lo / h;
        } else if (k == n) {
            t.emplace_back(n, n, -2.0 * ih2);
            t.emplace_back(n, n - 1, 2.0 * ih2);
            rhs[n] = fv[n] - 2.0 * flux_hi / h;
        } else {
            t.emplace_back(k, k - 1, ih2);
            t.emplace_back(k, k, -2.0 * ih2);
            t.emplace_back(k, k + 1, ih2);
            rhs[k] = fv[k];
        }
        // the multiplier column keeps the singular system solvable
        const double w = (k == 0 || k == n) ? 0.5 : 1.0;
        t.emplace_back(k, n + 1, w);
        t.emplace_back(n + 1, k, w);
    }
    Eigen::SparseMatrix<double> a(m, m);
    a.setFromTriplets(t.begin(), t.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
    if (lu.info() != Eigen::Success) throw SolverError("neumann: factorization failed");
    const Eigen::VectorXd sol = lu.solve(rhs);

    out.U.resize(n + 1);
    out.dU.resize(n + 1);
    for (int k = 0; k <= n; ++k) out.U[k] = sol[k];
    out.dU[0] = flux_lo;
    out.dU[n] = flux_hi;
    for (int k = 1; k < n; ++k) out.dU[k] = (out.U[k + 1] - out.U[k - 1]) / (2.0 * h);
    for (int k = 1; k < n; ++k) {
        const double div = (out.dU[k + 1] - out.dU[k - 1]) / (2.0 * h);
        out.divergence_residual = std::max(out.divergence_residual, std::abs(div - fv[k]));
    }
    return out;
}

NeumannSolution solve_fiber_neumann_sampled(const FiberProfile& p, double x, double xhat, int n) {
    require(p.fiber() == FiberKind::interval, "sampled fibre potential: interval fibres only");
    const double w = 0.5 * p.area(x);
    const double c = xhat * p.dlog_area(x);
    const double b = beta(p, x, Side::top, xhat);
    return solve_neumann_1d(-w, w, [c](double) { return c; }, -b, b, n);
}

LiftField lift_field(const ThinGrid& grid, const std::vector<double>& uhat) {
    require(static_cast<int>(uhat.size()) == grid.nx(), "lift_field: need one velocity per cell column");
    LiftField l;
    l.eps = grid.eps();
    l.u.resize(grid.cells());
    l.v.resize(grid.cells());
    for (int i = 0; i < grid.nx(); ++i) {
        for (int j = 0; j < grid.ns(); ++j) {
            const int c = grid.index(i, j);
            const double y = grid.eps() * grid.area_c(i) * grid.sc(j);
            l.u[c] = uhat[i];
            l.v[c] = uhat[i] * grid.glog_c(i) * y;
        }
    }
    return l;
}

FlowAreaCheck flow_area_check(const FiberProfile& p, double x0, double t_end, double step) {
    require(step > 0.0 && t_end >= 0.0, "flow_area_check: need step > 0 and t_end >= 0");
    if (!p.periodic() && (x0 < 0.0 || x0 + t_end > 1.0))
        throw SolverError("flow_area_check: the flow leaves the base interval");

    // state: x, top boundary point, bottom boundary point, log of the fibre Jacobian
    using State = std::array<double, 4>;
    auto rhs = [&p](const State& s) {
        const double g = p.dlog_area(s[0]);
        const double d = p.fiber_dim();
        return State{1.0, g / d * s[1], g / d * s[2], g};
    };
    const double w0 = p.fiber() == FiberKind::disk ? p.shape(x0) : 0.5 * p.area(x0);
    State s{x0, w0, -w0, 0.0};
    const int nsteps = std::max(1, static_cast<int>(std::ceil(t_end / step - 1e-9)));
    const double h = t_end / nsteps;
    auto axpy = [](const State& a, double c, const State& b) {
        return State{a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2], a[3] + c * b[3]};
    };
    for (int k = 0; k < nsteps; ++k) {
        const State k1 = rhs(s);
        const State k2 = rhs(axpy(s, 0.5 * h, k1));
        const State k3 = rhs(axpy(s, 0.5 * h, k2));
        const State k4 = rhs(axpy(s, h, k3));
        for (int q = 0; q < 4; ++q) s[q] += h / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
    }
    const double x1 = x0 + t_end;
    FlowAreaCheck out;
    out.area_flow = p.area(x0) * std::exp(s[3]);
    out.area_boundary = p.fiber() == FiberKind::disk ? std::numbers::pi * s[1] * s[1] : s[1] - s[2];
    out.area_direct = p.area(x1);
    const double b = beta(p, x1, Side::top, 1.0);
    out.rate_boundary = p.fiber() == FiberKind::disk ? 2.0 * std::numbers::pi * p.shape(x1) * b : 2.0 * b;
    out.rate_direct = p.area(x1, 1);
    return out;
}

double lifted_continuity_residual(const FiberProfile& p, double eps, const std::vector<double>& rho,
                                  const std::vector<double>& u, const std::vector<double>& drho_dt,
                                  int ns) {
    require(ns >= 2, "lifted_continuity_residual: need ns >= 2");
    const bool per = p.periodic();
    const int nb = static_cast<int>(rho.size());
    require(nb >= 3 && u.size() == rho.size() && drho_dt.size() == rho.size(),
            "lifted_continuity_residual: mismatched samples");
    const int n = per ? nb : nb - 1;
    const double h = 1.0 / n, ds = 1.0 / ns;

    // horizontal and vertical physical flux components on the (x, s) lattice
    auto f1 = [&](int k) { return rho[k] * u[k]; };
    auto f2 = [&](int k, double s) {
        const double x = k * h;
        return rho[k] * p.dlog_area(x) * eps * p.area(x) * s * u[k];
    };
    double worst = 0.0;
    const int k0 = per ? 0 : 1, k1 = per ? n : n;
    for (int k = k0; k < k1; ++k) {
        const int km = per ? (k + n - 1) % n : k - 1;
        const int kp = per ? (k + 1) % n : k + 1;
        const double x = k * h;
        const double ea = eps * p.area(x);
        for (int j = 1; j < ns; ++j) {
            const double s = -0.5 + j * ds;
            // f1 is constant along fibres, so the chain-rule correction vanishes
            const double d1 = (f1(kp) - f1(km)) / (2.0 * h);
            const double d2 = (f2(k, s + ds) - f2(k, s - ds)) / (2.0 * ds) / ea;
            worst = std::max(worst, std::abs(drho_dt[k] + d1 + d2));
        }
    }
    return worst;
}

}  // namespace collapse
