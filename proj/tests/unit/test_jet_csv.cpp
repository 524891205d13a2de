#include <doctest.h>

#include <cmath>
#include <sstream>

#include "collapse/csv.hpp"
#include "collapse/jet.hpp"

using namespace collapse;

TEST_CASE("jets carry exact first and second derivatives") {
    using J = Jet<2>;
    const J x = J::variable(0.7, 0), y = J::variable(-0.3, 1);
    const J f = sin(x * y) + exp(x) / (1.0 + y * y) + pow(x, 2.5) * sqrt(2.0 + y) - log(x) * cos(y);
    const double X = 0.7, Y = -0.3;
    auto F = [](double a, double b) {
        return std::sin(a * b) + std::exp(a) / (1 + b * b) + std::pow(a, 2.5) * std::sqrt(2 + b) - std::log(a) * std::cos(b);
    };
    CHECK(f.v == doctest::Approx(F(X, Y)).epsilon(1e-15));
    const double h = 1e-5;
    CHECK(f.d(0) == doctest::Approx((F(X + h, Y) - F(X - h, Y)) / (2 * h)).epsilon(1e-8));
    CHECK(f.d(1) == doctest::Approx((F(X, Y + h) - F(X, Y - h)) / (2 * h)).epsilon(1e-8));
    const double k = 1e-4;
    CHECK(f.dd(0, 0) == doctest::Approx((F(X + k, Y) - 2 * F(X, Y) + F(X - k, Y)) / (k * k)).epsilon(1e-5));
    CHECK(f.dd(0, 1) == doctest::Approx((F(X + k, Y + k) - F(X + k, Y - k) - F(X - k, Y + k) + F(X - k, Y - k)) /
                                        (4 * k * k))
                            .epsilon(1e-5));
    CHECK(f.dd(0, 1) == f.dd(1, 0));
}

TEST_CASE("csv writer keeps full precision") {
    std::ostringstream os;
    CsvWriter w(os);
    w.header({"a", "b", "c"});
    w << 0.1 << 3 << std::string("x,y");
    w.end_row();
    CHECK(os.str() == "a,b,c\n0.10000000000000001,3,x;y\n");
    const auto f = split_csv_line("0.10000000000000001,3,x;y");
    CHECK(std::stod(f[0]) == 0.1);
}
