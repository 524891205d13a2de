#include <doctest.h>

#include <cmath>
#include <numbers>

#include "collapse/entropy.hpp"
#include "collapse/korn.hpp"

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

const FiberProfile& cosine() {
    static const FiberProfile p(spec(BaseKind::circle, ShapeKind::cosine, 1.5, 0.5));
    return p;
}

LimitPoint smooth_limit(double x) {
    LimitPoint p;
    p.rho = 1.0 + 0.1 * std::cos(2 * pi * x);
    p.rho_x = -0.2 * pi * std::sin(2 * pi * x);
    p.u = 0.1 * std::sin(2 * pi * x);
    p.u_x = 0.2 * pi * std::cos(2 * pi * x);
    p.u_xx = -0.4 * pi * pi * std::sin(2 * pi * x);
    p.rho_t = 0.05 * std::sin(2 * pi * x);
    p.u_t = 0.02 * std::cos(2 * pi * x);
    return p;
}

FluidState lifted(std::shared_ptr<const ThinGrid> g) {
    return init_well_prepared(g, [](double x) { return smooth_limit(x).rho; },
                              [](double x) { return smooth_limit(x).u; });
}

// lifted state plus a fibre shear of amplitude a
FluidState sheared(std::shared_ptr<const ThinGrid> g, double a) {
    const FiberProfile& p = g->profile();
    const double eps = g->eps();
    return init_from_fields(g, [&](double x, double y, double& rho, Vec2& u) {
        const LimitPoint l = smooth_limit(x);
        rho = l.rho;
        const double d = a * std::cos(pi * y / (eps * p.area(x)));
        u = Vec2(l.u + d, p.dlog_area(x) * y * (l.u + d));
    });
}

MeterParams params() {
    MeterParams m;
    m.renorm = Renormalization(PressureLaw{}, 0.9);
    return m;
}

}  // namespace

TEST_CASE("lifted initial data has zero entropy against the lift") {
    auto g = std::make_shared<const ThinGrid>(cosine(), 0.1, 32, 8);
    const FluidState s = lifted(g);
    const LimitColumns lc = columns_from_function(*g, smooth_limit);
    CHECK(relative_entropy(*g, s, lc, params().renorm, Against::lift) <= 1e-12);
    CHECK(relative_entropy(*g, s, lc, params().renorm, Against::uhat) > 0.0);
}

TEST_CASE("uniform compression has unit entropy density") {
    auto g = std::make_shared<const ThinGrid>(cosine(), 0.1, 32, 8);
    const FluidState s = init_well_prepared(g, [](double) { return 2.0; }, [](double) { return 0.0; });
    const LimitColumns lc = columns_from_function(*g, [](double) { return LimitPoint{}; });
    const Renormalization h(PressureLaw{2.0, 1.0}, 1.0);
    CHECK(relative_entropy(*g, s, lc, h, Against::uhat) == doctest::Approx(g->measure()).epsilon(1e-13));
}

TEST_CASE("gap between the two comparisons is O(eps^2)") {
    std::vector<double> ratio;
    for (double eps : {0.2, 0.1, 0.05}) {
        auto g = std::make_shared<const ThinGrid>(cosine(), eps, 32, 8);
        const FluidState s = sheared(g, 0.01);
        const LimitColumns lc = columns_from_function(*g, smooth_limit);
        const double eu = relative_entropy(*g, s, lc, params().renorm, Against::uhat);
        const double el = relative_entropy(*g, s, lc, params().renorm, Against::lift);
        ratio.push_back(std::abs(eu - el) / (eps * eps * g->measure()));
    }
    CHECK(ratio[2] < 2.0 * ratio[0]);
    CHECK(ratio[0] < 2.0 * ratio[2]);
}

TEST_CASE("remainder terms vanish for the lifted limit") {
    auto g = std::make_shared<const ThinGrid>(cosine(), 0.1, 32, 8);
    const FluidState s = lifted(g);
    const ThinSolver solver(g, SolverConfig{});
    const LimitColumns lc = columns_from_function(*g, smooth_limit);
    const EntropyReport r = meter(*g, s, solver.velocity_gradients(s), lc, params());
    for (double v : {r.I, r.II, r.III, r.IV, r.V, r.E_vs_lift}) CHECK(std::abs(v) <= 1e-14);
    CHECK(r.E_normalized * r.measure == doctest::Approx(r.E_vs_uhat).epsilon(1e-13));
    CHECK(r.min_dissipation_density >= -1e-12);
}

TEST_CASE("constant area removes the geometric terms") {
    const FiberProfile c(spec(BaseKind::circle, ShapeKind::constant, 1.0, 0.0));
    auto g = std::make_shared<const ThinGrid>(c, 0.1, 32, 8);
    const FluidState s = sheared(g, 0.05);
    const ThinSolver solver(g, SolverConfig{});
    const EntropyReport r =
        meter(*g, s, solver.velocity_gradients(s), columns_from_function(*g, smooth_limit), params());
    CHECK(r.III == 0.0);
    CHECK(r.IV == 0.0);
    CHECK(r.dissipation > 0.0);
}

TEST_CASE("third remainder term is bounded by eps times the lift distance") {
    std::vector<double> c;
    for (double eps : {0.2, 0.1, 0.05}) {
        auto g = std::make_shared<const ThinGrid>(cosine(), eps, 64, 16);
        const FluidState s = sheared(g, 0.05);
        const ThinSolver solver(g, SolverConfig{});
        const LimitColumns lc = columns_from_function(*g, smooth_limit);
        const EntropyReport r = meter(*g, s, solver.velocity_gradients(s), lc, params());
        c.push_back(std::abs(r.III) / (eps * weighted_lift_distance(*g, s, lc)));
    }
    for (double v : c) {
        CHECK(v < 1.0);
        CHECK(v > 0.0);
    }
    // the vertical mismatch is itself O(eps) here, so the ratio may shrink but must not grow
    for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k] <= 1.1 * c[k - 1]);
}

TEST_CASE("entropy quadrature converges at second order") {
    std::vector<double> e;
    for (int nx : {16, 32, 64, 128}) {
        auto g = std::make_shared<const ThinGrid>(cosine(), 0.1, nx, nx / 4);
        const FluidState s = sheared(g, 0.05);
        e.push_back(relative_entropy(*g, s, columns_from_function(*g, smooth_limit), params().renorm, Against::lift));
    }
    const double r1 = (e[1] - e[0]) / (e[2] - e[1]), r2 = (e[2] - e[1]) / (e[3] - e[2]);
    CHECK(r1 > 3.0);  // ns = 4 on the coarsest pair
    CHECK(r2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("inequality check") {
    std::vector<EntropyReport> reps(5);
    for (int k = 0; k < 5; ++k) {
        reps[k].t = 0.1 * k;
        reps[k].measure = 2.0;
    }
    const SlackSeries rest = inequality_check(reps);
    for (double s : rest.slack) CHECK(s == 0.0);

    // E decays exactly as the dissipation integrates
    for (int k = 0; k < 5; ++k) {
        reps[k].E_vs_lift = 1.0 - 0.1 * k;
        reps[k].dissipation = 1.0;
        reps[k].remainder = 0.5;
    }
    const SlackSeries s = inequality_check(reps);
    for (std::size_t k = 0; k < s.slack.size(); ++k) {
        CHECK(s.slack[k] == doctest::Approx(0.025 * k).epsilon(1e-12));
        CHECK(s.cum_dissipation[k] == doctest::Approx(0.05 * k).epsilon(1e-12));
    }
    CHECK(s.min_slack == 0.0);
}

TEST_CASE("meter rejects mismatched or invalid input") {
    auto g = std::make_shared<const ThinGrid>(cosine(), 0.1, 32, 8);
    const FluidState s = lifted(g);
    const ThinSolver solver(g, SolverConfig{});
    LimitColumns lc = columns_from_function(*g, smooth_limit);
    lc.rho[3] = 0.0;
    CHECK_THROWS_AS(meter(*g, s, solver.velocity_gradients(s), lc, params()), SolverError);
    lc.resize(10);
    CHECK_THROWS_AS(meter(*g, s, solver.velocity_gradients(s), lc, params()), InputError);
}

TEST_CASE("korn constant on the interval family") {
    const FiberProfile p(spec(BaseKind::interval, ShapeKind::affine, 1.0, 0.5));
    std::vector<double> k;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        const KornEstimate e = korn_estimate(ThinGrid(p, eps, 32, 8), 100);
        CHECK(e.kernel_dim == 0);
        CHECK(e.constant > 0.0);
        k.push_back(e.constant);
    }
    CHECK(*std::max_element(k.begin(), k.end()) < 2.0 * *std::min_element(k.begin(), k.end()));
    const double a = korn_estimate(ThinGrid(p, 0.1, 32, 8), 100).constant;
    const double b = korn_estimate(ThinGrid(p, 0.1, 32, 16), 100).constant;
    CHECK(std::abs(a - b) < 0.05 * a);
}

TEST_CASE("korn kernel of a flat periodic channel") {
    // translations along the base are tangent to flat walls and have zero deformation
    const FiberProfile p(spec(BaseKind::circle, ShapeKind::constant, 1.0, 0.0));
    const KornEstimate e = korn_estimate(ThinGrid(p, 0.1, 32, 8), 100);
    CHECK(e.kernel_dim >= 1);
    CHECK(e.constant > 0.0);
}
