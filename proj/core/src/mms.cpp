#include "collapse/mms.hpp"

#include <cmath>
#include <numbers>

#include "collapse/jet.hpp"
#include "collapse/tensor.hpp"

namespace collapse {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
using J3 = Jet<3>;  // (x, y, t)
using J2 = Jet<2>;  // (x, t)

struct ThinFields {
    J3 rho, u, v;
};

ThinFields thin_fields(const FiberProfile& p, double eps, double x, double y, double t) {
    const J3 X = J3::variable(x, 0), Y = J3::variable(y, 1), T = J3::variable(t, 2);
    const J3 A = p.shape_expr(X);
    const J3 s = Y / (eps * A);
    ThinFields f;
    f.rho = 1.0 + 0.1 * sin(kTau * X + T) * (1.0 + 0.3 * s * s);
    f.u = 0.1 * cos(kTau * X + 0.5 * T) * (1.0 + 0.2 * cos(kTau * s));
    f.v = p.dlog_area_expr(X) * Y * f.u;
    return f;
}

Mat2 gradient(const J3& u, const J3& v) {
    Mat2 G;
    G << u.d(0), u.d(1), v.d(0), v.d(1);
    return G;
}

template <class T>
T area_expr(const FiberProfile& p, const T& x) {
    const T f = p.shape_expr(x);
    return p.fiber() == FiberKind::disk ? std::numbers::pi * f * f : f;
}

double l2_weight_sum(const std::vector<double>& w, const std::vector<double>& e) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        num += w[k] * e[k] * e[k];
        den += w[k];
    }
    return std::sqrt(num / den);
}

void fill_orders(std::vector<MmsLevel>& out) {
    for (std::size_t k = 1; k < out.size(); ++k) {
        const double r = static_cast<double>(out[k].n) / out[k - 1].n;
        out[k].order_rho = std::log(out[k - 1].err_rho / out[k].err_rho) / std::log(r);
        out[k].order_u = std::log(out[k - 1].err_u / out[k].err_u) / std::log(r);
    }
}

}  // namespace

ThinManufactured::ThinManufactured(FiberProfile profile, double eps, double mu, double eta, PressureLaw law)
    : p_(std::move(profile)), eps_(eps), mu_(mu), eta_(eta), law_(law) {
    require(p_.analytic(), "mms: needs a closed-form profile");
    require(p_.fiber() == FiberKind::interval, "mms: needs interval fibres");
    require(p_.periodic(), "mms: needs a circle base");
}

void ThinManufactured::exact(double x, double y, double t, double& rho, Vec2& u) const {
    const ThinFields f = thin_fields(p_, eps_, x, y, t);
    rho = f.rho.v;
    u = Vec2(f.u.v, f.v.v);
}

void ThinManufactured::source(double x, double y, double t, double& f_rho, Vec2& f_mom) const {
    const ThinFields f = thin_fields(p_, eps_, x, y, t);
    const J3 mx = f.rho * f.u, my = f.rho * f.v;
    const J3 pr = law_.a * pow(f.rho, law_.gamma);
    f_rho = f.rho.d(2) + mx.d(0) + my.d(1);
    const J3 uu = mx * f.u, uv = mx * f.v, vv = my * f.v;
    const double div_x = f.u.dd(0, 0) + f.v.dd(1, 0);  // d_x div u
    const double div_y = f.u.dd(0, 1) + f.v.dd(1, 1);
    const double lap_u = f.u.dd(0, 0) + f.u.dd(1, 1);
    const double lap_v = f.v.dd(0, 0) + f.v.dd(1, 1);
    f_mom.x() = mx.d(2) + uu.d(0) + uv.d(1) + pr.d(0) - mu_ * lap_u - eta_ * div_x;
    f_mom.y() = my.d(2) + uv.d(0) + vv.d(1) + pr.d(1) - mu_ * lap_v - eta_ * div_y;
}

double ThinManufactured::wall_traction(double x, Side side, double t) const {
    const double h = 0.5 * eps_ * p_.area(x);
    const ThinFields f = thin_fields(p_, eps_, x, side == Side::top ? h : -h, t);
    const BoundaryFrame fr = boundary_frame(p_, eps_, x, side);
    return fr.tangent.dot(stress<2>(gradient(f.u, f.v), mu_, eta_) * fr.nu);
}

void LimitManufactured::exact(double x, double t, double& rho, double& u) const {
    rho = 1.0 + 0.1 * std::sin(kTau * x + t);
    u = 0.1 * std::cos(kTau * x) * std::cos(t);
}

void LimitManufactured::source(double x, double t, double& f_mass, double& f_mom) const {
    const J2 X = J2::variable(x, 0), T = J2::variable(t, 1);
    const J2 rho = 1.0 + 0.1 * sin(kTau * X + T);
    const J2 u = 0.1 * cos(kTau * X) * cos(T);
    const J2 A = area_expr(profile, X);
    const J2 gu = profile.dlog_area_expr(X) * u;
    const J2 m = rho * A, q = m * u, f = q * u;
    const J2 pr = cfg.law.a * pow(rho, cfg.law.gamma);
    f_mass = m.d(1) + q.d(0);
    f_mom = q.d(1) + f.d(0) + A.v * pr.d(0);
    if (cfg.model == LimitModel::navier_stokes) {
        const double lb = effective_bulk(cfg.mu, cfg.eta, cfg.ambient_dim);
        double visc = (cfg.mu + lb) * u.dd(0, 0);
        if (cfg.geometric_term) visc += lb * gu.d(0);
        f_mom -= A.v * visc;
    }
}

std::vector<MmsLevel> mms_thin(const MmsParams& prm) {
    const FiberProfile profile(prm.profile);
    auto forcing = std::make_shared<ThinManufactured>(profile, prm.eps, prm.mu, prm.eta, prm.law);
    std::vector<MmsLevel> out;
    for (int nx : prm.levels) {
        auto grid = std::make_shared<const ThinGrid>(profile, prm.eps, nx, nx / prm.ns_divisor);
        SolverConfig sc;
        sc.mu = prm.mu;
        sc.eta = prm.eta;
        sc.law = prm.law;
        sc.cfl = prm.cfl;
        sc.t_end = prm.t_end;
        sc.kappa4 = prm.kappa4;
        sc.forcing = forcing;
        ThinSolver solver(grid, sc);
        FluidState s = init_from_fields(grid, [&](double x, double y, double& r, Vec2& u) {
            forcing->exact(x, y, 0.0, r, u);
        });
        MmsLevel lv;
        lv.n = nx;
        lv.steps = solver.advance_to(s, prm.t_end);
        std::vector<double> w, er, eu;
        for (int i = 0; i < grid->nx(); ++i)
            for (int j = 0; j < grid->ns(); ++j) {
                const int c = grid->index(i, j);
                const Vec2 pc = grid->centre(i, j);
                double r;
                Vec2 u;
                forcing->exact(pc.x(), pc.y(), s.t, r, u);
                w.push_back(grid->volume(i));
                er.push_back(s.rho[c] - r);
                eu.push_back((s.velocity(c) - u).norm());
            }
        lv.err_rho = l2_weight_sum(w, er);
        lv.err_u = l2_weight_sum(w, eu);
        out.push_back(lv);
    }
    fill_orders(out);
    return out;
}

std::vector<MmsLevel> mms_limit(const MmsParams& prm, LimitModel model) {
    const FiberProfile profile(prm.profile);
    require(profile.periodic() && profile.analytic(), "mms: needs an analytic circle-base profile");
    LimitManufactured ex{profile, LimitConfig{}};
    ex.cfg.law = prm.law;
    ex.cfg.mu = prm.mu;
    ex.cfg.eta = prm.eta;
    ex.cfg.ambient_dim = profile.ambient_dim();
    ex.cfg.model = model;
    ex.cfg.cfl = prm.cfl;
    ex.cfg.kappa4 = prm.kappa4;
    ex.cfg.t_end = prm.t_end;
    ex.cfg.sample_dt = prm.t_end;
    ex.cfg.watch_rate = 0.0;
    ex.cfg.forcing = [ex](double x, double t, double& fm, double& fq) { ex.source(x, t, fm, fq); };
    std::vector<MmsLevel> out;
    for (int n : prm.levels) {
        LimitSolver solver(profile, ex.cfg, n);
        const auto s0 = solver.initial([&](double x) { double r, u; ex.exact(x, 0.0, r, u); return r; },
                                       [&](double x) { double r, u; ex.exact(x, 0.0, r, u); return u; });
        const LimitTrajectory tr = solver.run(s0);
        const LimitSample& last = tr.samples.back();
        MmsLevel lv;
        lv.n = n;
        lv.steps = tr.steps;
        std::vector<double> w(tr.x.size(), 1.0), er, eu;
        for (std::size_t k = 0; k < tr.x.size(); ++k) {
            double r, u;
            ex.exact(tr.x[k], last.t, r, u);
            er.push_back(last.rho[k] - r);
            eu.push_back(last.u[k] - u);
        }
        lv.err_rho = l2_weight_sum(w, er);
        lv.err_u = l2_weight_sum(w, eu);
        out.push_back(lv);
    }
    fill_orders(out);
    return out;
}

}  // namespace collapse
