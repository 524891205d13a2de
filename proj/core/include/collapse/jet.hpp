#pragma once

// Second-order forward-mode jets in K variables: value, gradient and Hessian.
// Used to evaluate manufactured solutions and their source terms without
// hand-derived derivatives.

#include <array>
#include <cmath>

namespace collapse {

template <int K>
struct Jet {
    double v = 0.0;
    std::array<double, K> g{};
    std::array<std::array<double, K>, K> h{};

    Jet() = default;
    Jet(double c) : v(c) {}  // NOLINT: constants promote implicitly

    static Jet variable(double value, int k) {
        Jet j(value);
        j.g[k] = 1.0;
        return j;
    }

    double d(int i) const { return g[i]; }
    double dd(int i, int j) const { return h[i][j]; }
};

// f(a) given f, f', f'' at a.v
template <int K>
Jet<K> chain(const Jet<K>& a, double f0, double f1, double f2) {
    Jet<K> r(f0);
    for (int i = 0; i < K; ++i) {
        r.g[i] = f1 * a.g[i];
        for (int j = 0; j < K; ++j) r.h[i][j] = f1 * a.h[i][j] + f2 * a.g[i] * a.g[j];
    }
    return r;
}

template <int K>
Jet<K> operator+(Jet<K> a, const Jet<K>& b) {
    a.v += b.v;
    for (int i = 0; i < K; ++i) {
        a.g[i] += b.g[i];
        for (int j = 0; j < K; ++j) a.h[i][j] += b.h[i][j];
    }
    return a;
}

template <int K>
Jet<K> operator-(const Jet<K>& a) {
    return chain(a, -a.v, -1.0, 0.0);
}

template <int K>
Jet<K> operator-(const Jet<K>& a, const Jet<K>& b) {
    return a + (-b);
}

template <int K>
Jet<K> operator*(const Jet<K>& a, const Jet<K>& b) {
    Jet<K> r(a.v * b.v);
    for (int i = 0; i < K; ++i) {
        r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int j = 0; j < K; ++j)
            r.h[i][j] = a.h[i][j] * b.v + a.v * b.h[i][j] + a.g[i] * b.g[j] + b.g[i] * a.g[j];
    }
    return r;
}

template <int K>
Jet<K> inverse(const Jet<K>& a) {
    const double iv = 1.0 / a.v;
    return chain(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

template <int K>
Jet<K> operator/(const Jet<K>& a, const Jet<K>& b) {
    return a * inverse(b);
}

template <int K> Jet<K> operator+(const Jet<K>& a, double c) { return a + Jet<K>(c); }
template <int K> Jet<K> operator+(double c, const Jet<K>& a) { return a + Jet<K>(c); }
template <int K> Jet<K> operator-(const Jet<K>& a, double c) { return a - Jet<K>(c); }
template <int K> Jet<K> operator-(double c, const Jet<K>& a) { return Jet<K>(c) - a; }
template <int K> Jet<K> operator*(const Jet<K>& a, double c) { return chain(a, a.v * c, c, 0.0); }
template <int K> Jet<K> operator*(double c, const Jet<K>& a) { return a * c; }
template <int K> Jet<K> operator/(const Jet<K>& a, double c) { return a * (1.0 / c); }
template <int K> Jet<K> operator/(double c, const Jet<K>& a) { return c * inverse(a); }

template <int K>
Jet<K> sin(const Jet<K>& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, s, c, -s);
}

template <int K>
Jet<K> cos(const Jet<K>& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, c, -s, -c);
}

template <int K>
Jet<K> exp(const Jet<K>& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}

template <int K>
Jet<K> log(const Jet<K>& a) {
    return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

template <int K>
Jet<K> pow(const Jet<K>& a, double p) {
    const double f = std::pow(a.v, p);
    return chain(a, f, p * std::pow(a.v, p - 1.0), p * (p - 1.0) * std::pow(a.v, p - 2.0));
}

template <int K>
Jet<K> sqrt(const Jet<K>& a) {
    return pow(a, 0.5);
}

// Lets generic code call sin/cos/... on both doubles and jets.
using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

inline double value_of(double x) { return x; }
template <int K>
double value_of(const Jet<K>& x) { return x.v; }

}  // namespace collapse
