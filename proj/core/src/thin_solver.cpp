#include "collapse/thin_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "collapse/tensor.hpp"

namespace collapse {

namespace {

// quadratic extrapolation to a face from cells at distances h/2, 3h/2, 5h/2
inline double extrapolate(double f0, double f1, double f2) { return (15.0 * f0 - 10.0 * f1 + 3.0 * f2) / 8.0; }

// derivative at a cell whose face value w sits h/2 behind it and whose next
// cell f1 sits h ahead
inline double edge_cell_slope(double w, double f0, double f1, double h) {
    return (-4.0 * w + 3.0 * f0 + f1) / (3.0 * h);
}

// derivative at a face with value w, into the domain, from cells at h/2 and 3h/2
inline double face_slope(double w, double f0, double f1, double h) { return (9.0 * f0 - f1 - 8.0 * w) / (3.0 * h); }

inline Mat2 physical_gradient(double ux, double us, double vx, double vs, double s, double g, double ea) {
    Mat2 G;
    G(0, 0) = ux - s * g * us;
    G(0, 1) = us / ea;
    G(1, 0) = vx - s * g * vs;
    G(1, 1) = vs / ea;
    return G;
}

}  // namespace

void SolverConfig::validate() const {
    require(mu >= 0.0 && eta >= 0.0, "solver: viscosities must be non-negative");
    require(cfl > 0.0 && cfl <= 0.9, "solver: cfl must lie in (0, 0.9]");
    require(t_end >= 0.0, "solver: t_end must be non-negative");
    require(kappa4 >= 0.0, "solver: dissipation coefficient must be non-negative");
    require(law.a > 0.0 && law.gamma > 1.0, "solver: pressure law needs a > 0, gamma > 1");
}

struct ThinSolver::Work {
    std::vector<double> u, v, p, c;
    std::vector<double> uxr, usr, vxr, vsr;  // reference derivatives at cells
    // wall traces, index [side][i]; side 0 bottom, 1 top
    std::vector<double> wr[2], wp[2], wu[2], wv[2], wux[2], wvx[2];
    std::vector<double> k1r, k1x, k1y, s1r, s1x, s1y;
};

ThinSolver::ThinSolver(std::shared_ptr<const ThinGrid> grid, SolverConfig cfg)
    : grid_(std::move(grid)), cfg_(std::move(cfg)), w_(std::make_unique<Work>()) {
    require(grid_ != nullptr, "solver: missing grid");
    cfg_.validate();
    const int n = grid_->cells(), nx = grid_->nx();
    for (auto* v : {&w_->u, &w_->v, &w_->p, &w_->c, &w_->uxr, &w_->usr, &w_->vxr, &w_->vsr, &w_->k1r, &w_->k1x,
                    &w_->k1y, &w_->s1r, &w_->s1x, &w_->s1y})
        v->assign(n, 0.0);
    for (int sd = 0; sd < 2; ++sd)
        for (auto* v : {&w_->wr[sd], &w_->wp[sd], &w_->wu[sd], &w_->wv[sd], &w_->wux[sd], &w_->wvx[sd]})
            v->assign(nx, 0.0);
}

ThinSolver::~ThinSolver() = default;
ThinSolver::ThinSolver(ThinSolver&&) noexcept = default;
ThinSolver& ThinSolver::operator=(ThinSolver&&) noexcept = default;

void ThinSolver::prepare(const double* r, const double* mx, const double* my) const {
    const ThinGrid& g = *grid_;
    const int nx = g.nx(), ns = g.ns();
    const bool per = g.periodic();
    Work& w = *w_;
    for (int c = 0; c < g.cells(); ++c) {
        w.u[c] = mx[c] / r[c];
        w.v[c] = my[c] / r[c];
        w.p[c] = cfg_.law.p(r[c]);
        w.c[c] = cfg_.law.sound_speed(r[c]);
    }

    // wall traces projected onto the discrete wall tangent
    for (int sd = 0; sd < 2; ++sd) {
        const Side side = sd == 0 ? Side::bottom : Side::top;
        const int j0 = sd == 0 ? 0 : ns - 1, dj = sd == 0 ? 1 : -1;
        for (int i = 0; i < nx; ++i) {
            const int c0 = g.index(i, j0), c1 = g.index(i, j0 + dj), c2 = g.index(i, j0 + 2 * dj);
            const double rw = extrapolate(r[c0], r[c1], r[c2]);
            const Vec2 uw(extrapolate(w.u[c0], w.u[c1], w.u[c2]), extrapolate(w.v[c0], w.v[c1], w.v[c2]));
            const Vec2 nu = g.wall_normal(i, side);
            const Vec2 tau(std::abs(nu.y()), sd == 0 ? nu.x() : -nu.x());
            const Vec2 ut = uw.dot(tau) * tau;
            w.wr[sd][i] = rw;
            w.wp[sd][i] = cfg_.law.p(std::max(rw, 0.0));
            w.wu[sd][i] = ut.x();
            w.wv[sd][i] = ut.y();
        }
        for (int i = 0; i < nx; ++i) {
            for (int comp = 0; comp < 2; ++comp) {
                const std::vector<double>& f = comp == 0 ? w.wu[sd] : w.wv[sd];
                double d;
                if (per) {
                    d = (f[(i + 1) % nx] - f[(i + nx - 1) % nx]) / (2.0 * g.dx());
                } else if (i == 0) {
                    d = edge_cell_slope(0.0, f[0], f[1], g.dx());
                } else if (i == nx - 1) {
                    d = -edge_cell_slope(0.0, f[nx - 1], f[nx - 2], g.dx());
                } else {
                    d = (f[i + 1] - f[i - 1]) / (2.0 * g.dx());
                }
                (comp == 0 ? w.wux[sd] : w.wvx[sd])[i] = d;
            }
        }
    }

    // reference derivatives at cell centres
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ns; ++j) {
            const int c = g.index(i, j);
            for (int comp = 0; comp < 2; ++comp) {
                const std::vector<double>& f = comp == 0 ? w.u : w.v;
                double dx, ds;
                if (per) {
                    dx = (f[g.index((i + 1) % nx, j)] - f[g.index((i + nx - 1) % nx, j)]) / (2.0 * g.dx());
                } else if (i == 0) {
                    dx = edge_cell_slope(0.0, f[c], f[g.index(1, j)], g.dx());
                } else if (i == nx - 1) {
                    dx = -edge_cell_slope(0.0, f[c], f[g.index(nx - 2, j)], g.dx());
                } else {
                    dx = (f[g.index(i + 1, j)] - f[g.index(i - 1, j)]) / (2.0 * g.dx());
                }
                if (j == 0) {
                    const double wb = (comp == 0 ? w.wu[0] : w.wv[0])[i];
                    ds = edge_cell_slope(wb, f[c], f[c + 1], g.ds());
                } else if (j == ns - 1) {
                    const double wt = (comp == 0 ? w.wu[1] : w.wv[1])[i];
                    ds = -edge_cell_slope(wt, f[c], f[c - 1], g.ds());
                } else {
                    ds = (f[c + 1] - f[c - 1]) / (2.0 * g.ds());
                }
                (comp == 0 ? w.uxr : w.vxr)[c] = dx;
                (comp == 0 ? w.usr : w.vsr)[c] = ds;
            }
        }
    }
}

void ThinSolver::residual(const double* r, const double* mx, const double* my, double t, double* dr,
                          double* dmx, double* dmy) const {
    const ThinGrid& g = *grid_;
    const int nx = g.nx(), ns = g.ns();
    const bool per = g.periodic();
    const double eps = g.eps(), mu = cfg_.mu, eta = cfg_.eta, k4 = cfg_.kappa4;
    prepare(r, mx, my);
    const Work& w = *w_;
    const int n = g.cells();
    std::fill(dr, dr + n, 0.0);
    std::fill(dmx, dmx + n, 0.0);
    std::fill(dmy, dmy + n, 0.0);

    auto add_flux = [&](int L, int R, double fr, const Vec2& fm) {
        if (L >= 0) {
            dr[L] -= fr;
            dmx[L] -= fm.x();
            dmy[L] -= fm.y();
        }
        if (R >= 0) {
            dr[R] += fr;
            dmx[R] += fm.x();
            dmy[R] += fm.y();
        }
    };
    auto interior_flux = [&](int L, int R, const Vec2& a, const Mat2& G) {
        const double rf = 0.5 * (r[L] + r[R]);
        const Vec2 uf(0.5 * (w.u[L] + w.u[R]), 0.5 * (w.v[L] + w.v[R]));
        const double pf = 0.5 * (w.p[L] + w.p[R]);
        const double un = uf.dot(a);
        const Vec2 fm = rf * un * uf + pf * a - stress<2>(G, mu, eta) * a;
        add_flux(L, R, rf * un, fm);
    };
    auto dissipate = [&](int Lm, int L, int R, int Rp, const Vec2& a) {
        const double lam = std::max(std::abs(w.u[L] * a.x() + w.v[L] * a.y()) / a.norm() + w.c[L],
                                    std::abs(w.u[R] * a.x() + w.v[R] * a.y()) / a.norm() + w.c[R]);
        const double k = k4 * lam * a.norm();
        const double fr = k * (r[Rp] - 3.0 * r[R] + 3.0 * r[L] - r[Lm]);
        const Vec2 fm(k * (mx[Rp] - 3.0 * mx[R] + 3.0 * mx[L] - mx[Lm]),
                      k * (my[Rp] - 3.0 * my[R] + 3.0 * my[L] - my[Lm]));
        add_flux(L, R, fr, fm);
    };

    // x-faces
    const int nfx = per ? nx : nx + 1;
    for (int iv = 0; iv < nfx; ++iv) {
        const int il = per ? (iv + nx - 1) % nx : iv - 1;
        const int ir = per ? iv % nx : (iv < nx ? iv : -1);
        const Vec2 a = g.xface(iv);
        const double gv = g.glog_v(iv), ea = eps * g.area_v(iv);
        for (int j = 0; j < ns; ++j) {
            const double s = g.sc(j);
            if (il >= 0 && ir >= 0) {
                const int L = g.index(il, j), R = g.index(ir, j);
                const Mat2 G = physical_gradient((w.u[R] - w.u[L]) / g.dx(), 0.5 * (w.usr[L] + w.usr[R]),
                                                 (w.v[R] - w.v[L]) / g.dx(), 0.5 * (w.vsr[L] + w.vsr[R]), s, gv,
                                                 ea);
                interior_flux(L, R, a, G);
                const int ilm = per ? (il + nx - 1) % nx : il - 1;
                const int irp = per ? (ir + 1) % nx : ir + 1;
                if (k4 > 0.0 && ilm >= 0 && irp < nx)
                    dissipate(g.index(ilm, j), L, R, g.index(irp, j), a);
            } else {
                // no-slip end: zero velocity on the face
                const bool left = ir >= 0;
                const int i0 = left ? 0 : nx - 1, di = left ? 1 : -1;
                const int c0 = g.index(i0, j), c1 = g.index(i0 + di, j), c2 = g.index(i0 + 2 * di, j);
                const double rw = extrapolate(r[c0], r[c1], r[c2]);
                const double sg = left ? 1.0 : -1.0;
                const Mat2 G = physical_gradient(sg * face_slope(0.0, w.u[c0], w.u[c1], g.dx()), 0.0,
                                                 sg * face_slope(0.0, w.v[c0], w.v[c1], g.dx()), 0.0, s, gv, ea);
                const Vec2 fm = cfg_.law.p(std::max(rw, 0.0)) * a - stress<2>(G, mu, eta) * a;
                add_flux(left ? -1 : c0, left ? c0 : -1, 0.0, fm);
            }
        }
    }

    // s-faces
    for (int i = 0; i < nx; ++i) {
        const double gc = g.glog_c(i), ea = eps * g.area_c(i), x = g.xc(i);
        for (int jv = 0; jv <= ns; ++jv) {
            const Vec2 a = g.sface(i, jv);
            const double s = g.sv(jv);
            if (jv > 0 && jv < ns) {
                const int L = g.index(i, jv - 1), R = g.index(i, jv);
                const Mat2 G = physical_gradient(0.5 * (w.uxr[L] + w.uxr[R]), (w.u[R] - w.u[L]) / g.ds(),
                                                 0.5 * (w.vxr[L] + w.vxr[R]), (w.v[R] - w.v[L]) / g.ds(), s, gc,
                                                 ea);
                interior_flux(L, R, a, G);
                if (k4 > 0.0 && jv - 2 >= 0 && jv + 1 <= ns - 1) dissipate(L - 1, L, R, R + 1, a);
                continue;
            }
            // slip wall: no mass flux, pressure and normal viscous traction,
            // prescribed (zero) tangential traction
            const int sd = jv == 0 ? 0 : 1;
            const Side side = sd == 0 ? Side::bottom : Side::top;
            const int c0 = sd == 0 ? g.index(i, 0) : g.index(i, ns - 1);
            const int c1 = sd == 0 ? c0 + 1 : c0 - 1;
            const double sg = sd == 0 ? 1.0 : -1.0;
            const double wu = w.wu[sd][i], wv = w.wv[sd][i];
            const Mat2 G = physical_gradient(w.wux[sd][i], sg * face_slope(wu, w.u[c0], w.u[c1], g.ds()),
                                             w.wvx[sd][i], sg * face_slope(wv, w.v[c0], w.v[c1], g.ds()), s, gc,
                                             ea);
            const double len = a.norm();
            const Vec2 nu = (sd == 0 ? -a : a) / len;
            const Vec2 tau(std::abs(nu.y()), sd == 0 ? nu.x() : -nu.x());
            const double snn = nu.dot(stress<2>(G, mu, eta) * nu);
            const double tw = cfg_.forcing ? cfg_.forcing->wall_traction(x, side, t) : 0.0;
            const Vec2 out = ((w.wp[sd][i] - snn) * nu - tw * tau) * len;
            dmx[c0] -= out.x();
            dmy[c0] -= out.y();
        }
    }

    for (int i = 0; i < nx; ++i) {
        const double iv = 1.0 / g.volume(i);
        for (int j = 0; j < ns; ++j) {
            const int c = g.index(i, j);
            if (cfg_.forcing) {
                const Vec2 pc = g.centre(i, j);
                double fr = 0.0;
                Vec2 fm(0.0, 0.0);
                cfg_.forcing->source(pc.x(), pc.y(), t, fr, fm);
                dr[c] += g.volume(i) * fr;
                dmx[c] += g.volume(i) * fm.x();
                dmy[c] += g.volume(i) * fm.y();
            }
            dr[c] *= iv;
            dmx[c] *= iv;
            dmy[c] *= iv;
        }
    }
}

void ThinSolver::rates(const FluidState& s, std::vector<double>& drho, std::vector<double>& dmx,
                       std::vector<double>& dmy) const {
    const int n = grid_->cells();
    drho.assign(n, 0.0);
    dmx.assign(n, 0.0);
    dmy.assign(n, 0.0);
    residual(s.rho.data(), s.mx.data(), s.my.data(), s.t, drho.data(), dmx.data(), dmy.data());
}

double ThinSolver::stable_dt(const FluidState& s) const {
    double smax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (int c = 0; c < grid_->cells(); ++c) {
        smax = std::max(smax, s.velocity(c).norm() + cfg_.law.sound_speed(s.rho[c]));
        rmin = std::min(rmin, s.rho[c]);
    }
    const double d = grid_->min_width();
    double dt = d / smax;
    const double nu = 2.0 * cfg_.mu + cfg_.eta;
    if (nu > 0.0) dt = std::min(dt, d * d * rmin / (2.0 * nu));
    return cfg_.cfl * dt;
}

void ThinSolver::step(FluidState& s, double dt) const {
    const int n = grid_->cells();
    Work& w = *w_;
    double* r = s.rho.data();
    double* x = s.mx.data();
    double* y = s.my.data();
    // stage 1
    residual(r, x, y, s.t, w.k1r.data(), w.k1x.data(), w.k1y.data());
    for (int c = 0; c < n; ++c) {
        w.s1r[c] = r[c] + dt * w.k1r[c];
        w.s1x[c] = x[c] + dt * w.k1x[c];
        w.s1y[c] = y[c] + dt * w.k1y[c];
    }
    // stage 2
    residual(w.s1r.data(), w.s1x.data(), w.s1y.data(), s.t + dt, w.k1r.data(), w.k1x.data(), w.k1y.data());
    for (int c = 0; c < n; ++c) {
        w.s1r[c] = 0.75 * r[c] + 0.25 * (w.s1r[c] + dt * w.k1r[c]);
        w.s1x[c] = 0.75 * x[c] + 0.25 * (w.s1x[c] + dt * w.k1x[c]);
        w.s1y[c] = 0.75 * y[c] + 0.25 * (w.s1y[c] + dt * w.k1y[c]);
    }
    // stage 3
    residual(w.s1r.data(), w.s1x.data(), w.s1y.data(), s.t + 0.5 * dt, w.k1r.data(), w.k1x.data(),
             w.k1y.data());
    for (int c = 0; c < n; ++c) {
        r[c] = r[c] / 3.0 + 2.0 / 3.0 * (w.s1r[c] + dt * w.k1r[c]);
        x[c] = x[c] / 3.0 + 2.0 / 3.0 * (w.s1x[c] + dt * w.k1x[c]);
        y[c] = y[c] / 3.0 + 2.0 / 3.0 * (w.s1y[c] + dt * w.k1y[c]);
    }
    s.t += dt;
    for (int c = 0; c < n; ++c) {
        if (!(r[c] > 0.0) || !std::isfinite(r[c]) || !std::isfinite(x[c]) || !std::isfinite(y[c])) {
            std::ostringstream os;
            os << "thin solver: non-positive density or non-finite state at t=" << s.t << ", cell " << c;
            throw SolverError(os.str(), s.t, c);
        }
    }
}

long ThinSolver::advance_to(FluidState& s, double t_target) const {
    long steps = 0;
    while (s.t < t_target - 1e-14) {
        double dt = stable_dt(s);
        if (s.t + dt > t_target - 1e-14) dt = t_target - s.t;
        step(s, dt);
        ++steps;
    }
    s.t = std::max(s.t, t_target);
    return steps;
}

std::vector<Mat2> ThinSolver::velocity_gradients(const FluidState& s) const {
    const ThinGrid& g = *grid_;
    prepare(s.rho.data(), s.mx.data(), s.my.data());
    const Work& w = *w_;
    std::vector<Mat2> out(g.cells());
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ns(); ++j) {
            const int c = g.index(i, j);
            out[c] = physical_gradient(w.uxr[c], w.usr[c], w.vxr[c], w.vsr[c], g.sc(j), g.glog_c(i),
                                       g.eps() * g.area_c(i));
        }
    return out;
}

double ThinSolver::max_slip_residual(const FluidState& s) const {
    const ThinGrid& g = *grid_;
    prepare(s.rho.data(), s.mx.data(), s.my.data());
    double worst = 0.0;
    for (int sd = 0; sd < 2; ++sd)
        for (int i = 0; i < g.nx(); ++i) {
            const Vec2 nu = g.wall_normal(i, sd == 0 ? Side::bottom : Side::top);
            worst = std::max(worst, std::abs(nu.x() * w_->wu[sd][i] + nu.y() * w_->wv[sd][i]));
        }
    return worst;
}

double ThinSolver::mass(const FluidState& s) const {
    const ThinGrid& g = *grid_;
    double m = 0.0;
    for (int i = 0; i < g.nx(); ++i) {
        double col = 0.0;
        for (int j = 0; j < g.ns(); ++j) col += s.rho[g.index(i, j)];
        m += col * g.volume(i);
    }
    return m;
}

FluidState init_from_fields(std::shared_ptr<const ThinGrid> grid,
                            const std::function<void(double, double, double&, Vec2&)>& f) {
    require(grid != nullptr, "init: missing grid");
    FluidState s;
    const int n = grid->cells();
    s.rho.resize(n);
    s.mx.resize(n);
    s.my.resize(n);
    for (int i = 0; i < grid->nx(); ++i)
        for (int j = 0; j < grid->ns(); ++j) {
            const int c = grid->index(i, j);
            const Vec2 p = grid->centre(i, j);
            double rho = 0.0;
            Vec2 u(0.0, 0.0);
            f(p.x(), p.y(), rho, u);
            if (!(rho > 0.0)) throw InputError("init: initial density must be positive");
            s.rho[c] = rho;
            s.mx[c] = rho * u.x();
            s.my[c] = rho * u.y();
        }
    s.grid = std::move(grid);
    return s;
}

FluidState init_well_prepared(std::shared_ptr<const ThinGrid> grid, const std::function<double(double)>& rho_hat,
                              const std::function<double(double)>& u_hat) {
    const FiberProfile& p = grid->profile();
    return init_from_fields(grid, [&](double x, double y, double& rho, Vec2& u) {
        rho = rho_hat(x);
        u = Vec2(u_hat(x), u_hat(x) * p.dlog_area(x) * y);
    });
}

}  // namespace collapse
