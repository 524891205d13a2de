#include "collapse/spline.hpp"

#include <cmath>
#include <utility>

#include "collapse/error.hpp"

namespace collapse {

namespace {

// Thomas algorithm, bands (1, d, 1).
void thomas(double d, std::vector<double>& r) {
    const std::size_t n = r.size();
    if (n == 0) return;
    std::vector<double> c(n);
    double beta = d;
    r[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        c[i] = 1.0 / beta;
        beta = d - c[i];
        r[i] = (r[i] - r[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) r[i] -= c[i + 1] * r[i + 1];
}

}  // namespace

void solve_constant_tridiagonal(double d, std::vector<double>& rhs, bool cyclic) {
    const std::size_t n = rhs.size();
    if (!cyclic || n < 3) {
        thomas(d, rhs);
        return;
    }
    // Sherman-Morrison: A = T + w w^T with corners folded into the diagonal.
    const double gamma = -d;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = 1.0;
    const double d0 = d - gamma, dn = d - 1.0 / gamma;

    auto solve_modified = [&](std::vector<double>& r) {
        std::vector<double> c(n);
        double beta = d0;
        r[0] /= beta;
        for (std::size_t i = 1; i < n; ++i) {
            c[i] = 1.0 / beta;
            beta = (i == n - 1 ? dn : d) - c[i];
            r[i] = (r[i] - r[i - 1]) / beta;
        }
        for (std::size_t i = n - 1; i-- > 0;) r[i] -= c[i + 1] * r[i + 1];
    };
    solve_modified(rhs);
    solve_modified(u);
    const double vy = rhs[0] + rhs[n - 1] / gamma;
    const double vz = u[0] + u[n - 1] / gamma;
    const double f = vy / (1.0 + vz);
    for (std::size_t i = 0; i < n; ++i) rhs[i] -= f * u[i];
}

UniformSpline::UniformSpline(double x0, double h, std::vector<double> f, Ends ends)
    : x0_(x0), h_(h), f_(std::move(f)), ends_(ends) {
    const std::size_t n = f_.size();
    require(h_ > 0.0, "spline: knot spacing must be positive");
    require(n >= 3, "spline: need at least 3 knots");
    m_.assign(n, 0.0);
    const double s = 6.0 / (h_ * h_);
    if (ends_ == Ends::natural) {
        std::vector<double> r(n - 2);
        for (std::size_t k = 1; k + 1 < n; ++k) r[k - 1] = s * (f_[k + 1] - 2.0 * f_[k] + f_[k - 1]);
        solve_constant_tridiagonal(4.0, r, false);
        for (std::size_t k = 1; k + 1 < n; ++k) m_[k] = r[k - 1];
    } else {
        require(std::abs(f_.front() - f_.back()) <= 1e-12 * (1.0 + std::abs(f_.front())),
                "spline: periodic data must repeat its first value at the end");
        const std::size_t p = n - 1;
        std::vector<double> r(p);
        for (std::size_t k = 0; k < p; ++k) {
            const double fm = f_[(k + p - 1) % p], fp = f_[(k + 1) % p];
            r[k] = s * (fp - 2.0 * f_[k] + fm);
        }
        solve_constant_tridiagonal(4.0, r, true);
        for (std::size_t k = 0; k < p; ++k) m_[k] = r[k];
        m_[p] = m_[0];
    }
}

double UniformSpline::eval(double x, int k) const {
    const std::size_t n = f_.size();
    const double len = h_ * static_cast<double>(n - 1);
    double xi = x - x0_;
    if (ends_ == Ends::periodic) {
        xi = std::fmod(xi, len);
        if (xi < 0.0) xi += len;
    }
    auto i = static_cast<long>(std::floor(xi / h_));
    if (i < 0) i = 0;
    if (i > static_cast<long>(n) - 2) i = static_cast<long>(n) - 2;
    const auto iu = static_cast<std::size_t>(i);
    const double b = xi - h_ * static_cast<double>(i);
    const double a = h_ - b;
    const double m0 = m_[iu], m1 = m_[iu + 1];
    const double c0 = f_[iu] - m0 * h_ * h_ / 6.0, c1 = f_[iu + 1] - m1 * h_ * h_ / 6.0;
    switch (k) {
        case 0: return (m0 * a * a * a + m1 * b * b * b) / (6.0 * h_) + (c0 * a + c1 * b) / h_;
        case 1: return (-m0 * a * a + m1 * b * b) / (2.0 * h_) + (c1 - c0) / h_;
        case 2: return (m0 * a + m1 * b) / h_;
        case 3: return (m1 - m0) / h_;
        default: return 0.0;
    }
}

}  // namespace collapse
