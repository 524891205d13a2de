#include "collapse/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "collapse/tensor.hpp"

namespace collapse {

void LimitColumns::resize(int n) {
    for (auto* v : {&rho, &rho_x, &rho_t, &u, &u_x, &u_xx, &u_t}) v->assign(n, 0.0);
}

LimitColumns columns_from_trajectory(const LimitTrajectory& traj, std::size_t sample, const ThinGrid& grid) {
    require(sample < traj.samples.size(), "meter: sample index out of range");
    require(traj.periodic == grid.periodic(), "meter: limit and thin bases differ");
    require(traj.n % (2 * grid.nx()) == 0, "meter: limit resolution must be a multiple of 2 nx");
    const LimitSample& s = traj.samples[sample];
    const double h = 1.0 / traj.n;
    const auto rx = base_derivative(s.rho, h, traj.periodic, 1);
    const auto ux = base_derivative(s.u, h, traj.periodic, 1);
    const auto uxx = base_derivative(s.u, h, traj.periodic, 2);
    const int stride = traj.n / grid.nx();
    LimitColumns c;
    c.resize(grid.nx());
    for (int i = 0; i < grid.nx(); ++i) {
        const int k = i * stride + stride / 2;
        c.rho[i] = s.rho[k];
        c.rho_x[i] = rx[k];
        c.rho_t[i] = s.drho_dt[k];
        c.u[i] = s.u[k];
        c.u_x[i] = ux[k];
        c.u_xx[i] = uxx[k];
        c.u_t[i] = s.du_dt[k];
    }
    return c;
}

LimitColumns columns_from_function(const ThinGrid& grid, const std::function<LimitPoint(double)>& f) {
    LimitColumns c;
    c.resize(grid.nx());
    for (int i = 0; i < grid.nx(); ++i) {
        const LimitPoint p = f(grid.xc(i));
        c.rho[i] = p.rho;
        c.rho_x[i] = p.rho_x;
        c.rho_t[i] = p.rho_t;
        c.u[i] = p.u;
        c.u_x[i] = p.u_x;
        c.u_xx[i] = p.u_xx;
        c.u_t[i] = p.u_t;
    }
    return c;
}

EntropyReport meter(const ThinGrid& grid, const FluidState& state, const std::vector<Mat2>& grads,
                    const LimitColumns& lim, const MeterParams& prm) {
    require(static_cast<int>(state.rho.size()) == grid.cells() && static_cast<int>(grads.size()) == grid.cells(),
            "meter: state does not match the grid");
    require(static_cast<int>(lim.rho.size()) == grid.nx(), "meter: limit columns do not match the grid");
    const FiberProfile& pf = grid.profile();
    const PressureLaw& law = prm.renorm.law();
    const double mu = prm.mu, eta = prm.eta;
    const double lb = effective_bulk(mu, eta, prm.ambient_dim);

    EntropyReport rep;
    rep.t = state.t;
    rep.measure = grid.measure();
    rep.min_dissipation_density = 0.0;
    for (int i = 0; i < grid.nx(); ++i) {
        const double x = grid.xc(i), vol = grid.volume(i);
        const double r = lim.rho[i];
        if (!(r > 0.0) || !std::isfinite(r)) throw SolverError("meter: limit density outside (0, inf)", state.t, i);
        const double uh = lim.u[i], ux = lim.u_x[i], uxx = lim.u_xx[i], ut = lim.u_t[i];
        const double g = grid.glog_c(i), g1 = pf.d2log_area(x), g2 = pf.d3log_area(x);
        const double gu1 = g1 * uh + g * ux;                   // (g u)'
        const double gu2 = g2 * uh + 2.0 * g1 * ux + g * uxx;  // (g u)''
        const double divU = ux + g * uh;
        const HValues hr = prm.renorm.H(r);
        const double pr = law.p(r), dpr = law.dp(r);
        const double ea = grid.eps() * grid.area_c(i);

        for (int j = 0; j < grid.ns(); ++j) {
            const int c = grid.index(i, j);
            const double y = ea * grid.sc(j);
            const Vec2 U(uh, g * y * uh);
            Mat2 GU;
            GU << ux, 0.0, y * gu1, g * uh;
            const double rho = state.rho[c];
            const Vec2 u = state.velocity(c);
            const Vec2 w = U - u;
            const Mat2& G = grads[c];

            rep.E_vs_lift += vol * prm.renorm.integrand(rho, w.squaredNorm(), r);
            rep.E_vs_uhat += vol * prm.renorm.integrand(rho, (u - Vec2(uh, 0.0)).squaredNorm(), r);

            const Mat2 Gw = G - GU;
            const double dis = contract<2>(stress<2>(Gw, mu, eta), Gw);
            rep.dissipation += vol * dis;
            rep.min_dissipation_density = std::min(rep.min_dissipation_density, dis);

            const double p = law.p(rho);
            const Vec2 Ut(ut, g * y * ut);
            const double r1 = rho * Ut.dot(w);
            const double r2 = rho * w.dot(GU * u);
            const double r3 = -contract<2>(stress<2>(GU, mu, eta), Gw);
            const double r4 = divU * (pr - p);
            const double r5 = (r - rho) * hr.d2H * lim.rho_t[i] + (r * U - rho * u).x() * hr.d2H * lim.rho_x[i];
            rep.remainder += vol * (r1 + r2 + r3 + r4 + r5);

            rep.I += vol * divU * (pr - p - (r - rho) * dpr);
            rep.II -= vol * rho * w.dot(GU * w);
            rep.III += vol * rho * w.y() * y * (g * ut + uh * gu1 + g * g * uh * uh);
            rep.IV -= vol * mu * y * gu2 * w.y();
            rep.V += vol * (rho - r) / r * (mu * uxx * w.x() + lb * (w.x() * gu1 + w.x() * uxx));
        }
    }
    rep.E_normalized = rep.E_vs_uhat / rep.measure;
    rep.E_lift_normalized = rep.E_vs_lift / rep.measure;
    return rep;
}

double relative_entropy(const ThinGrid& grid, const FluidState& state, const LimitColumns& lim,
                        const Renormalization& renorm, Against against) {
    double e = 0.0;
    for (int i = 0; i < grid.nx(); ++i) {
        const double r = lim.rho[i];
        if (!(r > 0.0)) throw SolverError("relative entropy: limit density outside (0, inf)", state.t, i);
        const double g = grid.glog_c(i), ea = grid.eps() * grid.area_c(i);
        for (int j = 0; j < grid.ns(); ++j) {
            const int c = grid.index(i, j);
            const double y = ea * grid.sc(j);
            const Vec2 U = against == Against::lift ? Vec2(lim.u[i], g * y * lim.u[i]) : Vec2(lim.u[i], 0.0);
            e += grid.volume(i) * renorm.integrand(state.rho[c], (state.velocity(c) - U).squaredNorm(), r);
        }
    }
    return e;
}

double weighted_lift_distance(const ThinGrid& grid, const FluidState& state, const LimitColumns& lim) {
    double e = 0.0;
    for (int i = 0; i < grid.nx(); ++i) {
        const double g = grid.glog_c(i), ea = grid.eps() * grid.area_c(i);
        for (int j = 0; j < grid.ns(); ++j) {
            const int c = grid.index(i, j);
            const Vec2 U(lim.u[i], g * ea * grid.sc(j) * lim.u[i]);
            e += grid.volume(i) * state.rho[c] * (state.velocity(c) - U).norm();
        }
    }
    return e;
}

SlackSeries inequality_check(const std::vector<EntropyReport>& reps) {
    SlackSeries s;
    if (reps.empty()) return s;
    const double m = reps.front().measure;
    double cr = 0.0, cd = 0.0;
    for (std::size_t k = 0; k < reps.size(); ++k) {
        if (k > 0) {
            const double dt = reps[k].t - reps[k - 1].t;
            cr += 0.5 * dt * (reps[k].remainder + reps[k - 1].remainder);
            cd += 0.5 * dt * (reps[k].dissipation + reps[k - 1].dissipation);
        }
        const double sl = (reps.front().E_vs_lift + cr - reps[k].E_vs_lift - cd) / m;
        s.t.push_back(reps[k].t);
        s.slack.push_back(sl);
        s.cum_remainder.push_back(cr / m);
        s.cum_dissipation.push_back(cd / m);
        s.min_slack = std::min(s.min_slack, sl);
    }
    return s;
}

double total_energy(const FluidState& state, const Renormalization& renorm) {
    const ThinGrid& g = *state.grid;
    double e = 0.0;
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ns(); ++j) {
            const int c = g.index(i, j);
            const double rho = state.rho[c];
            e += g.volume(i) * (0.5 * rho * state.velocity(c).squaredNorm() + renorm.H(rho).H);
        }
    return e;
}

}  // namespace collapse
