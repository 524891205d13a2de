#pragma once

#include <cstdint>
#include <utility>

namespace collapse {

// p(rho) = a rho^gamma
struct PressureLaw {
    double gamma = 2.0;
    double a = 1.0;

    double p(double rho) const;
    double dp(double rho) const;
    double d2p(double rho) const;
    double sound_speed(double rho) const;
    // limit of rho^(1-gamma) p'(rho)
    double p_infinity() const { return a * gamma; }
    // rejects gamma <= N/2 or a <= 0
    void validate(int ambient_dim) const;
};

struct HValues {
    double H, dH, d2H;
};

class Renormalization {
public:
    Renormalization(PressureLaw law, double rho_floor);

    const PressureLaw& law() const { return law_; }
    double rho_floor() const { return floor_; }

    HValues H(double rho) const;
    // H(rho) - H(r) - H'(r)(rho - r), evaluated without cancellation
    double bregman(double rho, double r) const;
    // 1/2 rho |u - U|^2 + bregman(rho, r), with du2 = |u - U|^2
    double integrand(double rho, double du2, double r) const;

private:
    PressureLaw law_;
    double floor_;
};

inline HValues renorm_H(const Renormalization& r, double rho) { return r.H(rho); }

template <class V>
double entropy_integrand(const Renormalization& h, double rho, const V& u, double r, const V& U) {
    return h.integrand(rho, (u - U).squaredNorm(), r);
}

double entropy_integrand(const Renormalization& h, double rho, double u, double r, double U);

struct Coercivity {
    double C1 = 0.0, C2 = 0.0, C3 = 0.0;
};

// Empirical best constants of the two-sided bound on K x K and of the far-field
// lower bound for r in K, rho outside Kp. Throws if a constant comes out
// non-positive.
Coercivity coercivity_scan(const Renormalization& h, std::pair<double, double> K,
                           std::pair<double, double> Kp, int samples, std::uint64_t seed = 7);

}  // namespace collapse
