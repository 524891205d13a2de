#include <doctest.h>

#include <cmath>
#include <sstream>

#include "collapse/config.hpp"
#include "collapse/csv.hpp"
#include "collapse/study.hpp"

using namespace collapse;

namespace {

StudyConfig small_config() {
    StudyConfig c;
    c.epsilons = {0.2, 0.1};
    c.nx = 16;
    c.ns = 4;
    c.t_end = 0.04;
    c.sample_dt = 0.02;
    c.korn_iter = 20;
    return c;
}

std::vector<StudyRow> synthetic(double (*f)(double)) {
    std::vector<StudyRow> rows;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        StudyRow r;
        r.epsilon = eps;
        r.t = 0.25;
        r.E_norm = f(eps);
        rows.push_back(r);
        r.t = 0.0;
        r.E_norm = 1.0;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_CASE("rate fit on synthetic rows") {
    const RateFit lin = fit_rate(synthetic([](double e) { return 0.7 * e; }), 0.25);
    CHECK(lin.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lin.bound_constant == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(lin.points == 4);
    const RateFit sq = fit_rate(synthetic([](double e) { return e * e; }), 0.25);
    CHECK(sq.slope == doctest::Approx(2.0).epsilon(1e-12));

    auto rows = synthetic([](double e) { return e; });
    rows.resize(4);
    CHECK_THROWS_AS(fit_rate(rows, 0.25), InputError);
    auto bad = synthetic([](double e) { return e; });
    bad[0].error = "boom";
    CHECK(fit_rate(bad, 0.25).points == 3);
}

TEST_CASE("config parsing") {
    std::istringstream in(R"(
[profile]
base = interval
area = affine
a = 1
b = 0.5
[fluid]
gamma = 2.5
mu = 0.02
[solver]
nx = 64
ns = 16
[initial]
u_a = 0.05
[study]
mode = euler_limit
epsilons = 0.2, 0.1, 0.05
kappa = 2
korn = false
)");
    const StudyConfig c = parse_config(in);
    CHECK(c.profile.base == BaseKind::interval);
    CHECK(c.profile.shape == ShapeKind::affine);
    CHECK(c.law.gamma == 2.5);
    CHECK(c.mu == 0.02);
    CHECK(c.eta == 0.05);
    CHECK(c.nx == 64);
    CHECK(c.initial.u_a == 0.05);
    CHECK(c.mode == StudyMode::euler_limit);
    CHECK(c.epsilons == std::vector<double>{0.2, 0.1, 0.05});
    CHECK(c.kappa == 2.0);
    CHECK_FALSE(c.korn);
}

TEST_CASE("config errors") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return parse_config(in);
    };
    CHECK_THROWS_AS(parse("[study]\nepsilons = 0.1, 0.2\n"), InputError);
    CHECK_THROWS_AS(parse("[study]\nepsilons = 0.1, -0.05\n"), InputError);
    CHECK_THROWS_AS(parse("[fluid]\nviscosity = 1\n"), InputError);
    CHECK_THROWS_AS(parse("[fluid]\nmu = fast\n"), InputError);
    CHECK_THROWS_AS(parse("[fluid]\ngamma = 0.9\n"), InputError);
    CHECK_THROWS_AS(parse("[study]\nmode = stokes\n"), InputError);
    CHECK_THROWS_AS(parse("[profile]\narea = affine\nb = -2\n"), InputError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.ini"), InputError);
}

TEST_CASE("csv round trip") {
    std::vector<StudyRow> rows(2);
    rows[0].epsilon = 0.1;
    rows[0].E_norm = 1.0 / 3.0;
    rows[0].korn_kernel = 2;
    rows[1].epsilon = 0.05;
    rows[1].error = "limit, failed\nbadly";
    std::ostringstream out;
    write_study_csv(out, rows);
    std::istringstream in(out.str());
    const auto back = read_study_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].E_norm == 1.0 / 3.0);
    CHECK(back[0].korn_kernel == 2);
    CHECK(back[1].error == "limit; failed;badly");
    CHECK(split_csv_line("a,,b").size() == 3);
}

TEST_CASE("rest state study stays at zero entropy") {
    StudyConfig c = small_config();
    c.epsilons = {0.1};
    c.initial.u_b = 0.0;
    c.korn = false;
    const auto rows = run_study(c);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.error.empty());
        CHECK(r.E_norm <= 1e-12);
        CHECK(std::abs(r.slack) <= 1e-12);
    }
}

TEST_CASE("study output is reproducible and ordered by epsilon") {
    StudyConfig c = small_config();
    std::ostringstream a, b, p;
    write_study_csv(a, run_study(c));
    write_study_csv(b, run_study(c));
    CHECK(a.str() == b.str());
    c.workers = 2;
    const auto par = run_study(c);
    write_study_csv(p, par);
    CHECK(a.str() == p.str());
    CHECK(par.front().epsilon == 0.2);
    CHECK(par.back().epsilon == 0.1);
    for (const auto& r : par) CHECK(r.E_norm >= 0.0);
}

TEST_CASE("failed sub-runs are recorded in the error column") {
    StudyConfig c = small_config();
    // limit resolution that does not nest the thin grid: every case reports an error
    c.limit_factor = 2;
    c.nx = 24;
    const LimitTrajectory lim = run_study_limit(c);
    c.nx = 16;
    const auto bad = run_study_case(c, lim, 0.1);
    REQUIRE(bad.size() == 1);
    CHECK_FALSE(bad[0].error.empty());
}

TEST_CASE("perturbation amplitude hits the target entropy") {
    StudyConfig c = small_config();
    const ThinGrid g(FiberProfile(c.profile), 0.1, 16, 8);
    c.initial.delta0 = 1e-3;
    const double a = perturbation_amplitude(c, g, 1e-3);
    CHECK(a > 0.0);
    c.epsilons = {0.1};
    c.korn = false;
    c.ns = 8;
    const auto rows = run_study(c);
    CHECK(rows.front().E0_norm == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("gnuplot script references the csv") {
    std::ostringstream os;
    write_gnuplot(os, "out.csv", 0.25);
    CHECK(os.str().find("'out.csv'") != std::string::npos);
    CHECK(os.str().find("logscale") != std::string::npos);
}
