#pragma once

#include <vector>

#include "collapse/limit_solver.hpp"
#include "collapse/thin_solver.hpp"

namespace collapse {

// Smooth exact solution on a circle-base thin domain with interval fibres:
//   rho = 1 + 0.1 sin(2 pi x + t) (1 + 0.3 s^2)
//   u   = 0.1 cos(2 pi x + t/2) (1 + 0.2 cos 2 pi s),  v = (A'/A) y u
// where s = y / (eps A(x)). v is chosen so u . nu = 0 on both walls; the
// tangential traction is not zero and is supplied through wall_traction.
class ThinManufactured final : public ThinForcing {
public:
    ThinManufactured(FiberProfile profile, double eps, double mu, double eta, PressureLaw law);

    void exact(double x, double y, double t, double& rho, Vec2& u) const;
    void source(double x, double y, double t, double& f_rho, Vec2& f_mom) const override;
    double wall_traction(double x, Side side, double t) const override;

private:
    FiberProfile p_;
    double eps_, mu_, eta_;
    PressureLaw law_;
};

// Limit exact solution rho = 1 + 0.1 sin(2 pi x + t), u = 0.1 cos(2 pi x) cos t,
// with the sources for d_t(rho A) and d_t(rho u A) of the configured model.
struct LimitManufactured {
    FiberProfile profile;
    LimitConfig cfg;

    void exact(double x, double t, double& rho, double& u) const;
    void source(double x, double t, double& f_mass, double& f_mom) const;
};

struct MmsLevel {
    int n = 0;
    double err_rho = 0.0;  // volume-weighted L2
    double err_u = 0.0;
    double order_rho = 0.0;  // against the previous level; 0 for the first
    double order_u = 0.0;
    long steps = 0;
};

struct MmsParams {
    ProfileSpec profile;  // must be circle base, interval fibre, analytic
    PressureLaw law;
    double eps = 0.25;
    double mu = 0.01;
    double eta = 0.01;
    double t_end = 0.1;
    double cfl = 0.4;
    double kappa4 = 0.01;
    std::vector<int> levels{64, 128, 256};
    int ns_divisor = 4;  // Ns = Nx / ns_divisor
};

std::vector<MmsLevel> mms_thin(const MmsParams& prm);
std::vector<MmsLevel> mms_limit(const MmsParams& prm, LimitModel model = LimitModel::navier_stokes);

}  // namespace collapse
