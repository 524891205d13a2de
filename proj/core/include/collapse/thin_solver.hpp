#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "collapse/geometry.hpp"
#include "collapse/thermo.hpp"

namespace collapse {

// Manufactured-solution hooks. Physical runs leave SolverConfig::forcing empty,
// which means no body force and zero tangential wall traction.
class ThinForcing {
public:
    virtual ~ThinForcing() = default;
    virtual void source(double x, double y, double t, double& f_rho, Vec2& f_mom) const = 0;
    // tangent . S . nu on the lateral wall above/below x (tangent along +x)
    virtual double wall_traction(double x, Side side, double t) const = 0;
};

struct SolverConfig {
    double mu = 0.05;
    double eta = 0.05;
    PressureLaw law;
    double cfl = 0.5;
    double t_end = 0.25;
    double kappa4 = 0.01;
    std::shared_ptr<const ThinForcing> forcing;

    void validate() const;
};

// Cell averages of density and momentum.
struct FluidState {
    std::shared_ptr<const ThinGrid> grid;
    std::vector<double> rho, mx, my;
    double t = 0.0;

    Vec2 velocity(int c) const { return {mx[c] / rho[c], my[c] / rho[c]}; }
};

// rho = rho_hat(x), momentum = rho_hat times the canonical lift of u_hat;
// both functions are evaluated at cell-centre columns.
FluidState init_well_prepared(std::shared_ptr<const ThinGrid> grid,
                              const std::function<double(double)>& rho_hat,
                              const std::function<double(double)>& u_hat);

// Generic initial data from physical-point fields.
FluidState init_from_fields(std::shared_ptr<const ThinGrid> grid,
                            const std::function<void(double x, double y, double& rho, Vec2& u)>& f);

// Finite-volume discretization on the mapped quadrilateral mesh:
// central fluxes, chain-rule viscous gradients, flux-form fourth-difference
// dissipation, slip walls through extrapolated wall traces projected onto the
// wall tangent, no-slip ends on an interval base, SSP RK3 in time.
// One instance per run; the scratch space makes it unsafe to share.
class ThinSolver {
public:
    ThinSolver(std::shared_ptr<const ThinGrid> grid, SolverConfig cfg);
    ~ThinSolver();
    ThinSolver(ThinSolver&&) noexcept;
    ThinSolver& operator=(ThinSolver&&) noexcept;

    const ThinGrid& grid() const { return *grid_; }
    const SolverConfig& config() const { return cfg_; }

    double stable_dt(const FluidState& s) const;
    void step(FluidState& s, double dt) const;
    // Steps until s.t == t_target exactly. Returns the number of steps.
    long advance_to(FluidState& s, double t_target) const;

    // Per-cell velocity gradients G(i, j) = d_j u^i in physical coordinates.
    std::vector<Mat2> velocity_gradients(const FluidState& s) const;
    // max |u . nu| over wall traces (nu: discrete wall normal)
    double max_slip_residual(const FluidState& s) const;
    double mass(const FluidState& s) const;

    // Semi-discrete right-hand side (per-unit-volume rates).
    void rates(const FluidState& s, std::vector<double>& drho, std::vector<double>& dmx,
               std::vector<double>& dmy) const;

private:
    struct Work;
    void prepare(const double* r, const double* mx, const double* my) const;
    void residual(const double* r, const double* mx, const double* my, double t, double* dr, double* dmx,
                  double* dmy) const;

    std::shared_ptr<const ThinGrid> grid_;
    SolverConfig cfg_;
    std::unique_ptr<Work> w_;
};

}  // namespace collapse
