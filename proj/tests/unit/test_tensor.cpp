#include <doctest.h>

#include <random>

#include "collapse/tensor.hpp"

using namespace collapse;

TEST_CASE("deformation tensor") {
    using M = SquareMat<2>;
    CHECK(deformation<2>(M::Identity()) == M::Identity());
    M shear;
    shear << 0, 1, 0, 0;
    M half;
    half << 0, 0.5, 0.5, 0;
    CHECK(deformation<2>(shear) == half);
    M rot;
    rot << 0, -1, 1, 0;
    CHECK(deformation<2>(rot).norm() == 0.0);
}

TEST_CASE("stress tensor") {
    using M = SquareMat<2>;
    const double mu = 0.3, eta = 0.7;
    CHECK((stress<2>(M::Identity(), mu, eta) - 2.0 * eta * M::Identity()).norm() < 1e-15);
    M shear;
    shear << 0, 1, 0, 0;
    M expect;
    expect << 0, mu, mu, 0;
    CHECK((stress<2>(shear, mu, eta) - expect).norm() < 1e-15);
    CHECK(stress<2>(M::Zero(), mu, eta).norm() == 0.0);
}

TEST_CASE("contraction identity examples") {
    using M = SquareMat<2>;
    const double mu = 0.3, eta = 0.7;
    const auto [l1, r1] = contraction_identity<2>(M::Identity(), mu, eta);
    CHECK(l1 == doctest::Approx(4 * eta));
    CHECK(r1 == doctest::Approx(4 * eta));
    M shear;
    shear << 0, 1, 0, 0;
    const auto [l2, r2] = contraction_identity<2>(shear, mu, eta);
    CHECK(l2 == doctest::Approx(mu));
    CHECK(r2 == doctest::Approx(mu));
}

template <int N>
void random_checks(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0), v(0.01, 2.0);
    for (int k = 0; k < 10000; ++k) {
        SquareMat<N> G;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) G(i, j) = u(rng);
        const double mu = v(rng), eta = v(rng);
        const auto [lhs, rhs] = contraction_identity<N>(G, mu, eta);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
        const SquareMat<N> S = stress<N>(G, mu, eta);
        CHECK((S - S.transpose()).norm() <= 1e-14);
        CHECK(std::abs(S.trace() - N * eta * G.trace()) <= 1e-12 * (1.0 + std::abs(S.trace())));
    }
}

TEST_CASE("contraction identity on random gradients") {
    random_checks<2>(1);
    random_checks<3>(2);
}

TEST_CASE("bulk coefficient of the limit") {
    CHECK(effective_bulk(0.3, 0.7, 2) == 0.7);
    CHECK(effective_bulk(0.3, 0.7, 3) == doctest::Approx(0.8));
}
