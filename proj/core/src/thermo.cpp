#include "collapse/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "collapse/error.hpp"

namespace collapse {

double PressureLaw::p(double rho) const { return a * std::pow(rho, gamma); }
double PressureLaw::dp(double rho) const { return a * gamma * std::pow(rho, gamma - 1.0); }
double PressureLaw::d2p(double rho) const { return a * gamma * (gamma - 1.0) * std::pow(rho, gamma - 2.0); }
double PressureLaw::sound_speed(double rho) const { return std::sqrt(dp(rho)); }

void PressureLaw::validate(int ambient_dim) const {
    require(a > 0.0, "pressure: scale a must be positive");
    require(gamma > 0.5 * ambient_dim && gamma > 1.0,
            "pressure: gamma must exceed N/2 (and 1) for the configured dimension");
}

Renormalization::Renormalization(PressureLaw law, double rho_floor) : law_(law), floor_(rho_floor) {
    require(law_.a > 0.0 && law_.gamma > 1.0, "renormalization: need a > 0 and gamma > 1");
    require(rho_floor >= 0.0, "renormalization: rho_floor must be non-negative");
}

HValues Renormalization::H(double rho) const {
    if (!(rho > 0.0)) throw InputError("renormalization: rho must be positive");
    const double g = law_.gamma, a = law_.a;
    const double rg1 = std::pow(rho, g - 1.0), fg1 = std::pow(floor_, g - 1.0);
    return {a * rho * (rg1 - fg1) / (g - 1.0), a * (g * rg1 - fg1) / (g - 1.0), a * g * rg1 / rho};
}

double Renormalization::bregman(double rho, double r) const {
    if (!(r > 0.0)) throw InputError("relative entropy: reference density must be positive");
    if (rho < 0.0) throw InputError("relative entropy: density must be non-negative");
    const double g = law_.gamma;
    // the floor-dependent part of H is linear in rho and cancels
    const double d = rho / r - 1.0;
    const double bracket = d > -1.0 ? std::expm1(g * std::log1p(d)) - g * d : -1.0 - g * d;
    return law_.a * std::pow(r, g) / (g - 1.0) * bracket;
}

double Renormalization::integrand(double rho, double du2, double r) const {
    return 0.5 * rho * du2 + bregman(rho, r);
}

double entropy_integrand(const Renormalization& h, double rho, double u, double r, double U) {
    return h.integrand(rho, (u - U) * (u - U), r);
}

Coercivity coercivity_scan(const Renormalization& h, std::pair<double, double> K,
                           std::pair<double, double> Kp, int samples, std::uint64_t seed) {
    require(K.first > 0.0 && K.first < K.second, "coercivity: K must be a positive interval");
    require(Kp.first > 0.0 && Kp.first < K.first && K.second < Kp.second,
            "coercivity: K must lie inside the interior of K'");
    require(samples > 0, "coercivity: need samples > 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> inK(K.first, K.second), unit(0.0, 1.0);
    const double g = h.law().gamma;

    Coercivity c;
    c.C1 = std::numeric_limits<double>::infinity();
    c.C2 = 0.0;
    c.C3 = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double rho = inK(rng), r = inK(rng);
        // |u - U|^2 spans zero (pure density) to a few units
        const double du2 = (k % 4 == 0) ? 0.0 : 4.0 * unit(rng);
        const double denom = du2 + (rho - r) * (rho - r);
        if (denom < 1e-14) continue;
        const double q = h.integrand(rho, du2, r) / denom;
        c.C1 = std::min(c.C1, q);
        c.C2 = std::max(c.C2, q);

        // far field: rho in [0, Kp.lo) or in (Kp.hi, 100 Kp.hi]
        const double rf = (k % 2 == 0) ? Kp.first * unit(rng)
                                       : Kp.second * std::exp(std::log(100.0) * unit(rng));
        const double far = h.integrand(rf, du2, r) / (1.0 + rf * du2 + std::pow(rf, g));
        c.C3 = std::min(c.C3, far);
    }
    if (!(c.C1 > 0.0) || !(c.C3 > 0.0))
        throw SolverError("coercivity: sampled integrand violates the convexity bounds");
    return c;
}

}  // namespace collapse
