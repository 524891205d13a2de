#include <doctest.h>

#include <cmath>
#include <random>

#include "collapse/error.hpp"
#include "collapse/tensor.hpp"
#include "collapse/thermo.hpp"

using namespace collapse;

TEST_CASE("renormalization closed form") {
    const Renormalization h(PressureLaw{2.0, 1.0}, 1.0);
    CHECK(h.H(1.0).H == 0.0);
    const HValues v = h.H(2.0);
    CHECK(v.H == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(v.dH == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(v.d2H == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(h.H(0.0), InputError);
    CHECK_THROWS_AS(h.H(-1.0), InputError);
}

TEST_CASE("renormalization solves its ODE") {
    for (double gamma : {1.4, 2.0, 3.0}) {
        const PressureLaw law{gamma, 0.7};
        const Renormalization h(law, 0.8);
        for (int k = 0; k <= 600; ++k) {
            const double rho = std::pow(10.0, -3.0 + 6.0 * k / 600.0);
            const HValues v = h.H(rho);
            const double p = law.p(rho);
            CHECK(std::abs(rho * v.dH - v.H - p) <= 1e-11 * std::max(1.0, p));
            CHECK(v.d2H == doctest::Approx(law.dp(rho) / rho).epsilon(1e-13));
            CHECK(v.d2H > 0.0);
        }
    }
}

TEST_CASE("scale consistency in a") {
    const Renormalization h1(PressureLaw{2.0, 1.0}, 0.7), h2(PressureLaw{2.0, 2.0}, 0.7);
    for (double rho : {0.1, 1.0, 3.0}) {
        CHECK(h2.H(rho).H == doctest::Approx(2.0 * h1.H(rho).H).epsilon(1e-15));
        CHECK(h2.H(rho).dH == doctest::Approx(2.0 * h1.H(rho).dH).epsilon(1e-15));
        CHECK(h2.H(rho).d2H == doctest::Approx(2.0 * h1.H(rho).d2H).epsilon(1e-15));
        CHECK(h2.law().p(rho) == doctest::Approx(2.0 * h1.law().p(rho)).epsilon(1e-15));
    }
}

TEST_CASE("entropy integrand") {
    const Renormalization h(PressureLaw{2.0, 1.0}, 1.0);
    CHECK(entropy_integrand(h, 1.3, 0.4, 1.3, 0.4) == 0.0);
    CHECK(entropy_integrand(h, 1.0, 1.0, 1.0, 0.0) == doctest::Approx(0.5));
    CHECK(entropy_integrand(h, 2.0, 0.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(entropy_integrand(h, 0.0, 0.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(entropy_integrand(h, 1.0, 0.0, 0.0, 0.0), InputError);
}

TEST_CASE("entropy integrand is non-negative and symmetric") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ur(0.0, 5.0), uu(-3.0, 3.0), rr(1e-3, 5.0);
    for (double gamma : {1.5, 2.0, 2.5}) {
        const Renormalization h(PressureLaw{gamma, 1.0}, 0.5);
        for (int k = 0; k < 100000; ++k) {
            const double rho = ur(rng), u = uu(rng), r = rr(rng), U = uu(rng);
            const double e = entropy_integrand(h, rho, u, r, U);
            CHECK(e >= -1e-14);
            if (k % 100 == 0) CHECK(e == doctest::Approx(entropy_integrand(h, rho, -u, r, -U)).epsilon(1e-14));
        }
    }
}

TEST_CASE("coercivity constants") {
    const Renormalization h(PressureLaw{2.0, 1.0}, 1.0);
    const Coercivity c = coercivity_scan(h, {0.5, 2.0}, {0.25, 4.0}, 10000);
    CHECK(c.C1 > 0.0);
    CHECK(c.C2 >= c.C1);
    CHECK(c.C3 > 0.0);
    // rho = 0, r = 1: integrand 1 against the weight 1
    CHECK(c.C3 <= 1.0);
    // gamma = 2: the pressure part is exactly |rho - r|^2
    CHECK(c.C1 <= 0.5 + 1e-12);
    CHECK_THROWS_AS(coercivity_scan(h, {0.5, 2.0}, {1.0, 4.0}, 100), InputError);
}

TEST_CASE("pressure law admissibility") {
    CHECK_NOTHROW(PressureLaw{2.0, 1.0}.validate(3));
    CHECK_THROWS_AS((PressureLaw{1.4, 1.0}.validate(3)), InputError);
    CHECK_THROWS_AS((PressureLaw{1.0, 1.0}.validate(2)), InputError);
    CHECK_THROWS_AS((PressureLaw{2.0, -1.0}.validate(2)), InputError);
    const PressureLaw law{2.0, 1.5};
    CHECK(law.p(0.0) == 0.0);
    CHECK(std::pow(1e6, -1.0) * law.dp(1e6) == doctest::Approx(law.p_infinity()));
}
