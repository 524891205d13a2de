#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "collapse/entropy.hpp"
#include "collapse/geometry.hpp"
#include "collapse/limit_solver.hpp"
#include "collapse/thermo.hpp"

namespace collapse {

enum class StudyMode { ns_limit, euler_limit };
StudyMode parse_study_mode(const std::string& s);
std::string to_string(StudyMode m);

struct InitialData {
    double rho0 = 1.0;     // rho_hat_0 = rho0 (1 + rho_amp sin 2 pi x)
    double rho_amp = 0.0;
    double u_a = 0.0;      // u_hat_0 = u_a + u_b sin 2 pi x; on an interval u_a multiplies sin pi x
    double u_b = 0.1;
    // Ill-prepared runs: target E0_norm, reached with a fibre-shear perturbation.
    double delta0 = 0.0;

    double rho_hat0(double x) const;
    double u_hat0(double x, bool periodic) const;
};

struct StudyConfig {
    ProfileSpec profile;
    PressureLaw law;
    double rho_floor = -1.0;  // negative: use the minimum of rho_hat_0
    double mu = 0.05;
    double eta = 0.05;
    double kappa = 1.0;       // euler mode: mu = eta = kappa * eps
    std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
    int nx = 128;
    int ns = 16;
    int limit_factor = 4;
    double cfl = 0.5;
    double kappa4 = 0.01;
    double t_end = 0.25;
    double sample_dt = 0.01;
    StudyMode mode = StudyMode::ns_limit;
    InitialData initial;
    bool korn = true;
    int korn_iter = 200;
    int workers = 1;
    std::string output;  // csv path; empty means stdout

    void validate() const;
    double floor_density() const;
};

struct StudyRow {
    double epsilon = 0.0, mu = 0.0, eta = 0.0, t = 0.0;
    double E0_norm = 0.0, E_norm = 0.0, E_lift_norm = 0.0;
    double dissipation_cum = 0.0, remainder_cum = 0.0, slack = 0.0;
    double I = 0.0, II = 0.0, III = 0.0, IV = 0.0, V = 0.0;
    double korn = 0.0;
    int korn_kernel = 0;
    double Lambda = 0.0, rho_min = 0.0, rho_max = 0.0;
    std::string error;
};

// Limit trajectory for the study's model and initial data.
LimitTrajectory run_study_limit(const StudyConfig& cfg);

// One thin run metered against the given limit trajectory.
std::vector<StudyRow> run_study_case(const StudyConfig& cfg, const LimitTrajectory& limit, double eps);

// All epsilons (in config order), using cfg.workers threads.
std::vector<StudyRow> run_study(const StudyConfig& cfg);

// Amplitude of the fibre-shear perturbation giving E0_norm = delta0 on a grid.
double perturbation_amplitude(const StudyConfig& cfg, const ThinGrid& grid, double delta0);

void write_study_csv(std::ostream& os, const std::vector<StudyRow>& rows);
std::vector<StudyRow> read_study_csv(std::istream& is);
// gnuplot script plotting E_norm(T) against eps on log axes
void write_gnuplot(std::ostream& os, const std::string& csv_path, double t_select);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double bound_constant = 0.0;  // max over eps of E_norm / (eps + E0_norm)
    double bound_min = 0.0;       // min of the same ratio
    int points = 0;
};

// Least squares of log E_norm against log eps over rows at t_select
// (tolerance 1e-9); rows with an error are skipped.
RateFit fit_rate(const std::vector<StudyRow>& rows, double t_select);

}  // namespace collapse
