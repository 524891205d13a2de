#pragma once

#include <vector>

namespace collapse {

// Cubic interpolant on equispaced knots over [x0, x0 + (n-1) h].
// Periodic splines expect f.front() == f.back() (the closing knot is
// included) and are C2 across the seam; natural splines have zero second
// derivative at both ends.
class UniformSpline {
public:
    enum class Ends { natural, periodic };

    UniformSpline() = default;
    UniformSpline(double x0, double h, std::vector<double> f, Ends ends);

    // k-th derivative, k in 0..3
    double eval(double x, int k = 0) const;
    double operator()(double x) const { return eval(x, 0); }

    double x0() const { return x0_; }
    double step() const { return h_; }
    std::size_t size() const { return f_.size(); }
    Ends ends() const { return ends_; }

private:
    double x0_ = 0.0, h_ = 1.0;
    std::vector<double> f_, m_;  // knot values and second derivatives
    Ends ends_ = Ends::natural;
};

// Solves a cyclic or plain tridiagonal system with constant bands
// (sub = sup = 1, diag = d). Overwrites rhs with the solution.
void solve_constant_tridiagonal(double d, std::vector<double>& rhs, bool cyclic);

}  // namespace collapse
