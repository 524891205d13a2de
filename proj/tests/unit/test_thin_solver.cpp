#include <doctest.h>

#include <cmath>
#include <numbers>

#include "collapse/entropy.hpp"
#include "collapse/mms.hpp"
#include "collapse/thin_solver.hpp"

using namespace collapse;
using std::numbers::pi;

namespace {

ProfileSpec spec(BaseKind base, ShapeKind shape, double a, double b) {
    ProfileSpec s;
    s.base = base;
    s.shape = shape;
    s.a = a;
    s.b = b;
    return s;
}

std::shared_ptr<const ThinGrid> cosine_grid(double eps, int nx = 32, int ns = 8) {
    return std::make_shared<const ThinGrid>(FiberProfile(spec(BaseKind::circle, ShapeKind::cosine, 1.5, 0.5)), eps,
                                            nx, ns);
}

SolverConfig base_config() {
    SolverConfig c;
    c.mu = 0.05;
    c.eta = 0.05;
    return c;
}

}  // namespace

TEST_CASE("rest state is a fixed point") {
    auto g = cosine_grid(0.1);
    const ThinSolver s(g, base_config());
    FluidState st = init_well_prepared(g, [](double) { return 1.0; }, [](double) { return 0.0; });
    for (int k = 0; k < 5; ++k) s.step(st, s.stable_dt(st));
    for (std::size_t c = 0; c < st.rho.size(); ++c) {
        CHECK(std::abs(st.rho[c] - 1.0) <= 1e-14);
        CHECK(std::abs(st.mx[c]) <= 1e-14);
        CHECK(std::abs(st.my[c]) <= 1e-14);
    }
}

TEST_CASE("well-prepared data is slip-compatible") {
    auto g = cosine_grid(0.1);
    const ThinSolver s(g, base_config());
    const FluidState st = init_well_prepared(g, [](double) { return 1.0; },
                                             [](double x) { return 0.1 + 0.05 * std::sin(2 * pi * x); });
    CHECK(s.max_slip_residual(st) <= 1e-12);
}

TEST_CASE("slip holds after every step and mass is conserved") {
    for (BaseKind base : {BaseKind::circle, BaseKind::interval}) {
        const ProfileSpec ps = base == BaseKind::circle ? spec(base, ShapeKind::cosine, 1.5, 0.5)
                                                        : spec(base, ShapeKind::affine, 1.0, 0.5);
        auto g = std::make_shared<const ThinGrid>(FiberProfile(ps), 0.1, 32, 8);
        const ThinSolver s(g, base_config());
        const bool per = base == BaseKind::circle;
        FluidState st = init_well_prepared(g, [](double x) { return 1.0 + 0.1 * std::cos(2 * pi * x); },
                                           [per](double x) { return per ? 0.1 * std::sin(2 * pi * x)
                                                                        : 0.1 * std::sin(pi * x); });
        const double m0 = s.mass(st);
        double t = 0.0;
        for (int k = 0; k < 40; ++k) {
            const double dt = s.stable_dt(st);
            s.step(st, dt);
            t += dt;
            CHECK(s.max_slip_residual(st) <= 1e-10);
        }
        CHECK(std::abs(s.mass(st) - m0) <= 1e-12 * std::max(t, 1.0) * m0);
    }
}

TEST_CASE("runs are deterministic") {
    auto g = cosine_grid(0.1);
    const ThinSolver s(g, base_config());
    auto run = [&] {
        FluidState st = init_well_prepared(g, [](double) { return 1.0; }, [](double x) { return 0.1 * std::sin(2 * pi * x); });
        s.advance_to(st, 0.02);
        return st;
    };
    const FluidState a = run(), b = run();
    CHECK(a.rho == b.rho);
    CHECK(a.mx == b.mx);
    CHECK(a.my == b.my);
    CHECK(a.t == 0.02);
}

TEST_CASE("inviscid energy drift shrinks with the grid") {
    std::vector<double> drift;
    for (int nx : {32, 64}) {
        auto g = cosine_grid(0.2, nx, nx / 4);
        SolverConfig c = base_config();
        c.mu = c.eta = 0.0;
        c.kappa4 = 0.0;
        const ThinSolver s(g, c);
        FluidState st = init_well_prepared(g, [](double x) { return 1.0 + 0.05 * std::cos(2 * pi * x); },
                                           [](double x) { return 0.05 * std::sin(2 * pi * x); });
        const Renormalization h(c.law, 0.9);
        const double e0 = total_energy(st, h);
        s.advance_to(st, 0.1);
        drift.push_back(std::abs(total_energy(st, h) - e0) / e0);
    }
    CHECK(drift[1] < drift[0] / 2.5);
    CHECK(drift[1] < 1e-5);
}

TEST_CASE("thin manufactured solution converges at second order") {
    MmsParams prm;
    prm.levels = {64, 128};
    const auto lv = mms_thin(prm);
    CHECK(lv[1].order_rho > 1.9);
    CHECK(lv[1].order_rho < 2.1);
    CHECK(lv[1].order_u > 1.9);
    CHECK(lv[1].order_u < 2.1);

    MmsParams half = prm;
    half.levels = {64};
    half.cfl = prm.cfl / 2;
    const auto lh = mms_thin(half);
    CHECK(lh[0].err_rho == doctest::Approx(lv[0].err_rho).epsilon(0.02));
    CHECK(lh[0].err_u == doctest::Approx(lv[0].err_u).epsilon(0.02));
}

TEST_CASE("manufactured forcing vanishes for rest-like data") {
    // the exact solution satisfies the slip condition on the continuous walls
    const FiberProfile p(spec(BaseKind::circle, ShapeKind::cosine, 1.5, 0.5));
    const ThinManufactured m(p, 0.25, 0.01, 0.01, PressureLaw{});
    for (double x : {0.0, 0.3, 0.71})
        for (Side sd : {Side::bottom, Side::top}) {
            const double y = (sd == Side::top ? 0.5 : -0.5) * 0.25 * p.area(x);
            double r;
            Vec2 u;
            m.exact(x, y, 0.05, r, u);
            CHECK(std::abs(u.dot(boundary_frame(p, 0.25, x, sd).nu)) < 1e-15);
        }
}

TEST_CASE("solver errors") {
    auto g = cosine_grid(0.1);
    SolverConfig c = base_config();
    c.cfl = 0.0;
    CHECK_THROWS_AS(ThinSolver(g, c), InputError);
    c = base_config();
    c.mu = -1.0;
    CHECK_THROWS_AS(ThinSolver(g, c), InputError);

    const ThinSolver s(g, base_config());
    FluidState st = init_well_prepared(g, [](double) { return 1.0; }, [](double) { return 0.0; });
    st.rho[5] = -0.1;
    CHECK_THROWS_AS(s.step(st, 1e-4), SolverError);
    st.rho[5] = std::nan("");
    CHECK_THROWS_AS(s.step(st, 1e-4), SolverError);
}

TEST_CASE("velocity gradients are exact for the lift of a linear field") {
    // u_hat = c gives grad U = [[0, 0], [c y g', c g]] in the interior
    auto g = cosine_grid(0.1, 64, 16);
    const ThinSolver s(g, base_config());
    const FluidState st = init_well_prepared(g, [](double) { return 1.0; }, [](double) { return 0.3; });
    const auto G = s.velocity_gradients(st);
    const FiberProfile& p = g->profile();
    for (int i = 0; i < g->nx(); i += 5)
        for (int j = 2; j < g->ns() - 2; ++j) {
            const Mat2& m = G[g->index(i, j)];
            const double x = g->xc(i), y = g->centre(i, j).y();
            CHECK(std::abs(m(0, 0)) < 1e-3);
            CHECK(m(1, 1) == doctest::Approx(0.3 * p.dlog_area(x)).epsilon(1e-2).scale(1.0));
            CHECK(m(1, 0) == doctest::Approx(0.3 * y * p.d2log_area(x)).epsilon(1e-2).scale(1.0));
        }
}
