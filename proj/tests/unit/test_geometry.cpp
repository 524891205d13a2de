#include <doctest.h>

#include <cmath>
#include <numbers>

#include "collapse/geometry.hpp"
#include "collapse/spline.hpp"

using namespace collapse;
using std::numbers::pi;

namespace {

ProfileSpec spec(BaseKind base, ShapeKind shape, double a, double b, double phase = 0.0) {
    ProfileSpec s;
    s.base = base;
    s.shape = shape;
    s.a = a;
    s.b = b;
    s.phase = phase;
    return s;
}

// 2 + sin(2 pi x) written as a shifted cosine
FiberProfile sine_profile() { return FiberProfile(spec(BaseKind::circle, ShapeKind::cosine, 2.0, 1.0, 0.25)); }

}  // namespace

TEST_CASE("constant area has zero derivatives") {
    const FiberProfile p(spec(BaseKind::interval, ShapeKind::constant, 1.0, 0.0));
    for (double x : {0.0, 0.3, 1.0}) {
        CHECK(p.area(x) == 1.0);
        CHECK(p.area(x, 1) == 0.0);
        CHECK(p.area(x, 2) == 0.0);
        CHECK(dlog_area(p, x) == 0.0);
    }
}

TEST_CASE("periodic profile closes up") {
    const FiberProfile p = sine_profile();
    CHECK(p.periodic());
    for (int k = 0; k <= 2; ++k) CHECK(p.area(0.0, k) == doctest::Approx(p.area(1.0, k)).epsilon(1e-12));
    CHECK(p.area(0.25) == doctest::Approx(3.0));
}

TEST_CASE("table of an affine function is reproduced") {
    ProfileSpec s = spec(BaseKind::interval, ShapeKind::table, 0, 0);
    for (int k = 0; k < 17; ++k) s.table.push_back(1.0 + 0.5 * k / 16.0);
    const FiberProfile p(s);
    for (int k = 0; k <= 100; ++k) {
        const double x = k / 100.0;
        CHECK(std::abs(p.area(x) - (1.0 + 0.5 * x)) <= 1e-12);
        CHECK(std::abs(p.area(x, 1) - 0.5) <= 1e-11);
    }
}

TEST_CASE("log-derivative of the area") {
    const FiberProfile e(spec(BaseKind::interval, ShapeKind::exponential, 1.0, 1.0));
    for (double x : {0.0, 0.4, 0.9}) CHECK(dlog_area(e, x) == doctest::Approx(1.0).epsilon(1e-14));

    const FiberProfile p = sine_profile();
    const double h = 1e-6;
    const double fd = (std::log(p.area(h)) - std::log(p.area(1.0 - h))) / (2 * h);
    CHECK(dlog_area(p, 0.0) == doctest::Approx(pi).epsilon(1e-12));
    CHECK(std::abs(fd - pi) < 1e-8);
}

TEST_CASE("log-derivative matches finite differences at second order") {
    const FiberProfile p(spec(BaseKind::circle, ShapeKind::cosine, 1.5, 0.5));
    for (double x : {0.1, 0.37, 0.8}) {
        double prev = 0.0;
        for (double h : {1e-4, 1e-5}) {
            const double fd = (std::log(p.area(x + h)) - std::log(p.area(x - h))) / (2 * h);
            const double err = std::abs(fd - p.dlog_area(x));
            CHECK(err < 50.0 * h * h);
            if (prev > 0.0) CHECK(err < prev);
            prev = err;
        }
        const double h = 1e-5;
        const double fd2 = (p.dlog_area(x + h) - p.dlog_area(x - h)) / (2 * h);
        CHECK(d2log_area(p, x) == doctest::Approx(fd2).epsilon(1e-7));
        const double fd3 = (p.d2log_area(x + h) - p.d2log_area(x - h)) / (2 * h);
        CHECK(p.d3log_area(x) == doctest::Approx(fd3).epsilon(1e-6));
    }
}

TEST_CASE("disk fibres store the radius") {
    ProfileSpec s = spec(BaseKind::interval, ShapeKind::affine, 1.0, 0.5);
    s.fiber = FiberKind::disk;
    const FiberProfile p(s);
    const double x = 0.3, R = 1.15;
    CHECK(p.area(x) == doctest::Approx(pi * R * R));
    CHECK(p.area(x, 1) == doctest::Approx(2 * pi * R * 0.5));
    CHECK(p.area(x, 2) == doctest::Approx(2 * pi * 0.25));
    CHECK(p.ambient_dim() == 3);
}

TEST_CASE("domain measure") {
    CHECK(domain_measure(FiberProfile(spec(BaseKind::interval, ShapeKind::constant, 1, 0)), 0.1) ==
          doctest::Approx(0.1).epsilon(1e-14));
    CHECK(domain_measure(sine_profile(), 0.05) == doctest::Approx(0.1).epsilon(1e-13));
    ProfileSpec d = spec(BaseKind::interval, ShapeKind::constant, 1, 0);
    d.fiber = FiberKind::disk;
    CHECK(domain_measure(FiberProfile(d), 0.1) == doctest::Approx(0.01 * pi).epsilon(1e-13));
}

TEST_CASE("domain measure scales like eps^d") {
    ProfileSpec d = spec(BaseKind::interval, ShapeKind::affine, 1.0, 0.5);
    for (FiberKind f : {FiberKind::interval, FiberKind::disk}) {
        d.fiber = f;
        const FiberProfile p(d);
        const double m1 = domain_measure(p, 1.0);
        for (double eps : {1.0, 0.5, 0.1})
            CHECK(domain_measure(p, eps) / m1 == doctest::Approx(std::pow(eps, p.fiber_dim())).epsilon(1e-15));
    }
}

TEST_CASE("boundary frame") {
    const FiberProfile c(spec(BaseKind::interval, ShapeKind::constant, 1, 0));
    const BoundaryFrame top = boundary_frame(c, 0.3, 0.5, Side::top);
    CHECK(top.nu.x() == doctest::Approx(0.0));
    CHECK(top.nu.y() == doctest::Approx(1.0));

    const FiberProfile lin(spec(BaseKind::interval, ShapeKind::affine, 1.0, -0.5));
    const BoundaryFrame f = boundary_frame(lin, 1.0, 0.0, Side::top);
    const double nrm = std::sqrt(1.0625);
    CHECK(f.nu.x() == doctest::Approx(0.25 / nrm).epsilon(1e-15));
    CHECK(f.nu.y() == doctest::Approx(1.0 / nrm).epsilon(1e-15));
    const BoundaryFrame b = boundary_frame(lin, 1.0, 0.0, Side::bottom);
    CHECK(b.nu.x() == doctest::Approx(0.25 / nrm).epsilon(1e-15));
    CHECK(b.nu.y() == doctest::Approx(-1.0 / nrm).epsilon(1e-15));
    CHECK(b.n.y() == -1.0);
}

TEST_CASE("boundary frame is orthonormal and transversal") {
    for (const FiberProfile& p : {sine_profile(), FiberProfile(spec(BaseKind::interval, ShapeKind::affine, 1.0, -0.5)),
                                  FiberProfile(spec(BaseKind::interval, ShapeKind::exponential, 1.0, 2.0))}) {
        for (double eps : {1.0, 0.1}) {
            for (int k = 0; k <= 50; ++k) {
                const double x = k / 50.0;
                for (Side sd : {Side::bottom, Side::top}) {
                    const BoundaryFrame f = boundary_frame(p, eps, x, sd);
                    CHECK(std::abs(f.nu.squaredNorm() - 1.0) <= 1e-14);
                    CHECK(std::abs(f.nu.dot(f.tangent)) <= 1e-14);
                    CHECK(f.nu.dot(f.n) > 0.0);
                    CHECK(f.tangent.x() > 0.0);
                }
            }
        }
    }
}

TEST_CASE("invalid profiles are rejected") {
    CHECK_THROWS_AS(FiberProfile(spec(BaseKind::interval, ShapeKind::affine, 1.0, -1.5)), InputError);
    CHECK_THROWS_AS(FiberProfile(spec(BaseKind::circle, ShapeKind::cosine, 0.5, 1.0)), InputError);
    CHECK_THROWS_AS(FiberProfile(spec(BaseKind::circle, ShapeKind::affine, 1.0, 0.5)), InputError);
    ProfileSpec t = spec(BaseKind::circle, ShapeKind::table, 0, 0);
    t.table = {1.0, 1.2, 1.1, 1.3};
    CHECK_THROWS_AS(FiberProfile{t}, InputError);
    t.table = {1.0, 1.2, 1.1, 1.0};
    CHECK_NOTHROW(FiberProfile{t});
    CHECK_THROWS_AS(parse_shape_kind("spline"), InputError);
    CHECK(parse_shape_kind("sinusoidal") == ShapeKind::cosine);
    CHECK_THROWS_AS(FiberProfile(spec(BaseKind::interval, ShapeKind::constant, 1, 0)).area(1.5), InputError);
    CHECK(sine_profile().area(1.3) == doctest::Approx(sine_profile().area(0.3)));
}

TEST_CASE("thin grid covers the domain") {
    const FiberProfile p(spec(BaseKind::circle, ShapeKind::cosine, 1.5, 0.5));
    for (double eps : {0.2, 0.05}) {
        const ThinGrid g(p, eps, 64, 16);
        CHECK(g.measure() == doctest::Approx(domain_measure(p, eps)).epsilon(1e-3));
        // every cell closes: sum of face area vectors vanishes
        for (int i = 0; i + 1 < g.nx(); i += 7)
            for (int j = 0; j < g.ns(); ++j) {
                const Vec2 net = g.xface(i + 1) - g.xface(i) + Vec2(g.sface(i, j + 1) - g.sface(i, j));
                CHECK(net.norm() < 1e-15);
            }
        for (int i = 0; i < g.nx(); ++i) {
            CHECK(std::abs(g.wall_normal(i, Side::top).norm() - 1.0) < 1e-14);
            CHECK(g.wall_normal(i, Side::top).y() > 0.0);
            CHECK(g.wall_normal(i, Side::bottom).y() < 0.0);
        }
    }
    CHECK_THROWS_AS(ThinGrid(p, 0.1, 2, 16), InputError);
    CHECK_THROWS_AS(ThinGrid(p, -0.1, 16, 16), InputError);
}

TEST_CASE("periodic spline is C2 across the seam") {
    std::vector<double> f;
    const int n = 32;
    for (int k = 0; k <= n; ++k) f.push_back(std::sin(2 * pi * k / n) + 0.3 * std::cos(4 * pi * k / n));
    const UniformSpline s(0.0, 1.0 / n, f, UniformSpline::Ends::periodic);
    for (int k = 0; k <= 2; ++k) CHECK(s.eval(1e-12, k) == doctest::Approx(s.eval(1.0 - 1e-12, k)).epsilon(1e-8));
    CHECK(s.eval(0.123) == doctest::Approx(std::sin(2 * pi * 0.123) + 0.3 * std::cos(4 * pi * 0.123)).epsilon(1e-4));
}
