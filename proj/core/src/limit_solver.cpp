#include "collapse/limit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "collapse/tensor.hpp"

namespace collapse {

std::vector<double> base_derivative(const std::vector<double>& f, double h, bool periodic, int order) {
    const int m = static_cast<int>(f.size());
    std::vector<double> d(m);
    if (periodic) {
        for (int k = 0; k < m; ++k) {
            const double fm = f[(k + m - 1) % m], fp = f[(k + 1) % m];
            d[k] = order == 1 ? (fp - fm) / (2.0 * h) : (fp - 2.0 * f[k] + fm) / (h * h);
        }
        return d;
    }
    for (int k = 1; k + 1 < m; ++k)
        d[k] = order == 1 ? (f[k + 1] - f[k - 1]) / (2.0 * h) : (f[k + 1] - 2.0 * f[k] + f[k - 1]) / (h * h);
    if (order == 1) {
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        d[m - 1] = (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) / (2.0 * h);
    } else {
        d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
        d[m - 1] = (2.0 * f[m - 1] - 5.0 * f[m - 2] + 4.0 * f[m - 3] - f[m - 4]) / (h * h);
    }
    return d;
}

LimitSolver::LimitSolver(FiberProfile profile, LimitConfig cfg, int n)
    : profile_(std::move(profile)), cfg_(std::move(cfg)), n_(n) {
    require(n >= 8, "limit solver: need at least 8 intervals");
    require(cfg_.cfl > 0.0 && cfg_.cfl <= 0.9, "limit solver: cfl must lie in (0, 0.9]");
    require(cfg_.t_end >= 0.0 && cfg_.sample_dt > 0.0, "limit solver: need t_end >= 0 and sample_dt > 0");
    if (cfg_.model == LimitModel::navier_stokes)
        require(cfg_.mu > 0.0 && cfg_.eta > 0.0, "limit solver: Navier-Stokes limit needs mu, eta > 0");
    cfg_.law.validate(cfg_.ambient_dim);
    if (cfg_.model == LimitModel::euler && cfg_.watch_rate == 0.0 && cfg_.t_end > 0.0)
        cfg_.watch_rate = 1.0 / cfg_.t_end;
    periodic_ = profile_.periodic();
    h_ = 1.0 / n;
    const int m = periodic_ ? n : n + 1;
    x_.resize(m);
    A_.resize(m);
    g_.resize(m);
    for (int k = 0; k < m; ++k) {
        x_[k] = k * h_;
        A_[k] = profile_.area(x_[k]);
        g_[k] = profile_.dlog_area(x_[k]);
    }
}

LimitState LimitSolver::initial(const std::function<double(double)>& rho0,
                                const std::function<double(double)>& u0) const {
    LimitState s;
    s.periodic = periodic_;
    s.n = n_;
    s.x = x_;
    s.rho.resize(x_.size());
    s.u.resize(x_.size());
    for (std::size_t k = 0; k < x_.size(); ++k) {
        s.rho[k] = rho0(x_[k]);
        s.u[k] = u0(x_[k]);
        if (!(s.rho[k] > 0.0)) throw InputError("limit solver: initial density must be positive");
    }
    if (!periodic_) s.u.front() = s.u.back() = 0.0;
    return s;
}

void LimitSolver::rhs(const std::vector<double>& m, const std::vector<double>& q, double t,
                      std::vector<double>& dm, std::vector<double>& dq) const {
    const int M = static_cast<int>(m.size());
    std::vector<double> rho(M), u(M), ru(M), p(M), f(M), gu(M), lam(M);
    for (int k = 0; k < M; ++k) {
        rho[k] = m[k] / A_[k];
        u[k] = q[k] / m[k];
        ru[k] = q[k] / A_[k];
        p[k] = cfg_.law.p(rho[k]);
        f[k] = q[k] * u[k];
        gu[k] = g_[k] * u[k];
        lam[k] = std::abs(u[k]) + cfg_.law.sound_speed(rho[k]);
    }
    const bool ns = cfg_.model == LimitModel::navier_stokes;
    const double lb = effective_bulk(cfg_.mu, cfg_.eta, cfg_.ambient_dim);
    const double ih = 1.0 / h_, ih2 = ih * ih;
    dm.assign(M, 0.0);
    dq.assign(M, 0.0);

    auto at = [&](const std::vector<double>& v, int k) -> double {
        return periodic_ ? v[(k % M + M) % M] : v[k];
    };
    const int k0 = periodic_ ? 0 : 1, k1 = periodic_ ? M : M - 1;
    for (int k = k0; k < k1; ++k) {
        dm[k] = -0.5 * ih * (at(q, k + 1) - at(q, k - 1));
        double r = -0.5 * ih * (at(f, k + 1) - at(f, k - 1)) - A_[k] * 0.5 * ih * (at(p, k + 1) - at(p, k - 1));
        if (ns) {
            double visc = (cfg_.mu + lb) * ih2 * (at(u, k + 1) - 2.0 * u[k] + at(u, k - 1));
            if (cfg_.geometric_term) visc += lb * 0.5 * ih * (at(gu, k + 1) - at(gu, k - 1));
            r += A_[k] * visc;
        }
        dq[k] = r;
    }
    if (!periodic_) {
        // summation-by-parts closure keeps the trapezoid mass exact
        dm[0] = -ih * (q[1] - q[0]);
        dm[M - 1] = -ih * (q[M - 1] - q[M - 2]);
    }

    if (cfg_.kappa4 > 0.0) {
        // flux-form fourth difference on faces k+1/2 whose stencil fits
        const int nf = periodic_ ? M : M - 1;
        for (int k = 0; k < nf; ++k) {
            if (!periodic_ && (k - 1 < 0 || k + 2 > M - 1)) continue;
            // differences of rho and rho u, not of the weighted variables, so rest stays rest
            const double l = cfg_.kappa4 * std::max(at(lam, k), at(lam, k + 1)) * 0.5 * (at(A_, k) + at(A_, k + 1));
            auto d3 = [&](const std::vector<double>& v) {
                return (at(v, k + 2) - 3.0 * at(v, k + 1) + 3.0 * v[k] - at(v, k - 1)) * ih;
            };
            const double fm = l * d3(rho);
            const double fq = l * d3(ru);
            const int kp = (k + 1) % M;
            dm[k] -= fm;
            dm[kp] += fm;
            if (periodic_ || k > 0) dq[k] -= fq;
            if (periodic_ || kp < M - 1) dq[kp] += fq;
        }
    }

    if (cfg_.forcing) {
        for (int k = 0; k < M; ++k) {
            double fm = 0.0, fq = 0.0;
            cfg_.forcing(x_[k], t, fm, fq);
            dm[k] += fm;
            if (periodic_ || (k > 0 && k < M - 1)) dq[k] += fq;
        }
    }
}

void LimitSolver::time_derivatives(const LimitState& s, std::vector<double>& drho,
                                   std::vector<double>& du) const {
    const int M = static_cast<int>(s.rho.size());
    std::vector<double> m(M), q(M), dm, dq;
    for (int k = 0; k < M; ++k) {
        m[k] = s.rho[k] * A_[k];
        q[k] = m[k] * s.u[k];
    }
    rhs(m, q, s.t, dm, dq);
    drho.resize(M);
    du.resize(M);
    for (int k = 0; k < M; ++k) {
        drho[k] = dm[k] / A_[k];
        du[k] = (dq[k] - s.u[k] * dm[k]) / m[k];
    }
}

double LimitSolver::stable_dt(const LimitState& s) const {
    double smax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.rho.size(); ++k) {
        smax = std::max(smax, std::abs(s.u[k]) + cfg_.law.sound_speed(s.rho[k]));
        rmin = std::min(rmin, s.rho[k]);
    }
    double dt = h_ / smax;
    if (cfg_.model == LimitModel::navier_stokes) {
        const double nu = cfg_.mu + effective_bulk(cfg_.mu, cfg_.eta, cfg_.ambient_dim);
        dt = std::min(dt, h_ * h_ * rmin / (2.0 * nu));
    }
    return cfg_.cfl * dt;
}

void LimitSolver::step(LimitState& s, double dt) const {
    const int M = static_cast<int>(s.rho.size());
    std::vector<double> m0(M), q0(M), m1(M), q1(M), dm, dq;
    for (int k = 0; k < M; ++k) {
        m0[k] = s.rho[k] * A_[k];
        q0[k] = m0[k] * s.u[k];
    }
    rhs(m0, q0, s.t, dm, dq);
    for (int k = 0; k < M; ++k) {
        m1[k] = m0[k] + dt * dm[k];
        q1[k] = q0[k] + dt * dq[k];
    }
    rhs(m1, q1, s.t + dt, dm, dq);
    for (int k = 0; k < M; ++k) {
        m1[k] = 0.75 * m0[k] + 0.25 * (m1[k] + dt * dm[k]);
        q1[k] = 0.75 * q0[k] + 0.25 * (q1[k] + dt * dq[k]);
    }
    rhs(m1, q1, s.t + 0.5 * dt, dm, dq);
    for (int k = 0; k < M; ++k) {
        const double m = m0[k] / 3.0 + 2.0 / 3.0 * (m1[k] + dt * dm[k]);
        const double q = q0[k] / 3.0 + 2.0 / 3.0 * (q1[k] + dt * dq[k]);
        s.rho[k] = m / A_[k];
        s.u[k] = q / m;
        if (!(s.rho[k] > 0.0) || !std::isfinite(s.rho[k]) || !std::isfinite(s.u[k]))
            throw SolverError("limit solver: density left (0, inf) or state not finite", s.t + dt, k);
    }
    if (!periodic_) s.u.front() = s.u.back() = 0.0;
    s.t += dt;
}

LimitTrajectory LimitSolver::run(const LimitState& s0) const {
    LimitTrajectory tr;
    tr.periodic = periodic_;
    tr.n = n_;
    tr.x = x_;
    LimitState s = s0;
    ClassicalCertificate& c = tr.certificate;
    c.rho_min = std::numeric_limits<double>::infinity();
    c.rho_max = 0.0;

    auto certify = [&](const LimitState& st) {
        const auto d1 = base_derivative(st.u, h_, periodic_, 1);
        const auto d2 = base_derivative(st.u, h_, periodic_, 2);
        double a0 = 0.0, a1 = 0.0, a2 = 0.0, dmin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < st.u.size(); ++k) {
            a0 = std::max(a0, std::abs(st.u[k]));
            a1 = std::max(a1, std::abs(d1[k]));
            a2 = std::max(a2, std::abs(d2[k]));
            dmin = std::min(dmin, d1[k]);
            c.rho_min = std::min(c.rho_min, st.rho[k]);
            c.rho_max = std::max(c.rho_max, st.rho[k]);
        }
        c.Lambda = std::max(c.Lambda, a0 + a1 + a2);
        if (!std::isfinite(c.Lambda)) throw SolverError("limit solver: C2 norm not finite", st.t);
        if (cfg_.watch_rate > 0.0 && dmin <= -cfg_.watch_rate)
            throw SolverError("limit solver: velocity gradient blow-up (min u_x <= -1/T)", st.t);
    };
    auto sample = [&](const LimitState& st) {
        LimitSample smp;
        smp.t = st.t;
        smp.rho = st.rho;
        smp.u = st.u;
        time_derivatives(st, smp.drho_dt, smp.du_dt);
        tr.samples.push_back(std::move(smp));
    };

    certify(s);
    sample(s);
    const int nsamp = static_cast<int>(std::llround(cfg_.t_end / cfg_.sample_dt));
    for (int k = 1; k <= std::max(nsamp, cfg_.t_end > 0.0 ? 1 : 0); ++k) {
        const double target = k == nsamp || nsamp == 0 ? cfg_.t_end : s0.t + k * cfg_.sample_dt;
        while (s.t < target - 1e-14) {
            double dt = stable_dt(s);
            if (s.t + dt > target - 1e-14) dt = target - s.t;
            step(s, dt);
            ++tr.steps;
            certify(s);
        }
        s.t = target;
        sample(s);
    }
    return tr;
}

double weighted_mass(const LimitState& s, const FiberProfile& profile) {
    const int M = static_cast<int>(s.rho.size());
    const double h = 1.0 / s.n;
    double sum = 0.0;
    for (int k = 0; k < M; ++k) {
        const double w = (!s.periodic && (k == 0 || k == M - 1)) ? 0.5 : 1.0;
        sum += w * s.rho[k] * profile.area(s.x[k]);
    }
    return sum * h;
}

std::vector<double> weighted_mass(const LimitTrajectory& traj, const FiberProfile& profile) {
    std::vector<double> out;
    LimitState s;
    s.periodic = traj.periodic;
    s.n = traj.n;
    s.x = traj.x;
    for (const auto& smp : traj.samples) {
        s.rho = smp.rho;
        out.push_back(weighted_mass(s, profile));
    }
    return out;
}

}  // namespace collapse
