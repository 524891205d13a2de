// collapse-ns: thin-domain Navier-Stokes studies from the command line.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "collapse/config.hpp"
#include "collapse/csv.hpp"
#include "collapse/entropy.hpp"
#include "collapse/korn.hpp"
#include "collapse/lift.hpp"
#include "collapse/mms.hpp"
#include "collapse/study.hpp"
#include "collapse/thin_solver.hpp"

using namespace collapse;

namespace {

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw InputError("cannot write " + path);
        os = &file;
    }
};

std::vector<double> sample_times(double t_end, double dt) {
    std::vector<double> t{0.0};
    const long n = std::lround(std::ceil(t_end / dt - 1e-9));
    for (long k = 1; k <= n; ++k) t.push_back(std::min(t_end, k * dt));
    return t;
}

int cmd_study(const std::string& cfg_path, std::string out, int workers, bool gnuplot) {
    StudyConfig cfg = load_config(cfg_path);
    if (workers > 0) cfg.workers = workers;
    if (out.empty()) out = cfg.output;
    const auto rows = run_study(cfg);
    {
        Output o(out);
        write_study_csv(*o.os, rows);
    }
    int failed = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) {
            std::cerr << "eps=" << r.epsilon << ": " << r.error << "\n";
            ++failed;
        }
    if (cfg.epsilons.size() >= 3) {
        try {
            const RateFit f = fit_rate(rows, cfg.t_end);
            std::cerr << "slope=" << f.slope << " intercept=" << f.intercept << " bound_constant=" << f.bound_constant
                      << " bound_ratio=" << f.bound_constant / f.bound_min << "\n";
        } catch (const std::exception& e) {
            std::cerr << "fit: " << e.what() << "\n";
        }
    }
    if (gnuplot) {
        const std::string csv = out.empty() ? "study.csv" : out;
        std::ofstream gp(csv + ".gp");
        write_gnuplot(gp, csv, cfg.t_end);
        std::cerr << "wrote " << csv << ".gp\n";
    }
    return failed ? 2 : 0;
}

int cmd_run_ns(const std::string& cfg_path, double eps_opt, const std::string& out) {
    const StudyConfig cfg = load_config(cfg_path);
    const double eps = eps_opt > 0.0 ? eps_opt : config_epsilon(cfg_path);
    auto grid = std::make_shared<const ThinGrid>(FiberProfile(cfg.profile), eps, cfg.nx, cfg.ns);
    SolverConfig sc;
    sc.mu = cfg.mu;
    sc.eta = cfg.eta;
    sc.law = cfg.law;
    sc.cfl = cfg.cfl;
    sc.t_end = cfg.t_end;
    sc.kappa4 = cfg.kappa4;
    ThinSolver solver(grid, sc);
    const bool per = grid->periodic();
    FluidState s = init_well_prepared(grid, [&](double x) { return cfg.initial.rho_hat0(x); },
                                      [&](double x) { return cfg.initial.u_hat0(x, per); });
    Output o(out);
    CsvWriter w(*o.os);
    w.header({"t", "x", "s", "rho", "ux", "uy"});
    long steps = 0;
    for (double t : sample_times(cfg.t_end, cfg.sample_dt)) {
        steps += solver.advance_to(s, t);
        for (int i = 0; i < grid->nx(); ++i)
            for (int j = 0; j < grid->ns(); ++j) {
                const int c = grid->index(i, j);
                const Vec2 u = s.velocity(c);
                w << s.t << grid->xc(i) << grid->sc(j) << s.rho[c] << u.x() << u.y();
                w.end_row();
            }
    }
    std::cerr << "steps=" << steps << " mass=" << solver.mass(s) << " slip=" << solver.max_slip_residual(s) << "\n";
    return 0;
}

int cmd_run_limit(const std::string& cfg_path, const std::string& out) {
    const StudyConfig cfg = load_config(cfg_path);
    const LimitTrajectory tr = run_study_limit(cfg);
    Output o(out);
    CsvWriter w(*o.os);
    w.header({"t", "x", "rho_hat", "u_hat"});
    for (const auto& smp : tr.samples)
        for (std::size_t k = 0; k < tr.x.size(); ++k) {
            w << smp.t << tr.x[k] << smp.rho[k] << smp.u[k];
            w.end_row();
        }
    std::cout.flush();
    std::cerr << "Lambda=" << tr.certificate.Lambda << "\n"
              << "rho_min=" << tr.certificate.rho_min << "\n"
              << "rho_max=" << tr.certificate.rho_max << "\n"
              << "steps=" << tr.steps << "\n";
    return 0;
}

// rows of a snapshot csv at the requested time (last time if t < 0)
std::vector<std::vector<double>> read_snapshot(const std::string& path, std::size_t cols, double& t) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    std::getline(in, line);
    std::map<double, std::vector<std::vector<double>>> by_t;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != cols) throw InputError(path + ": expected " + std::to_string(cols) + " columns");
        std::vector<double> v;
        for (const auto& x : f) v.push_back(std::stod(x));
        by_t[v[0]].push_back(v);
    }
    if (by_t.empty()) throw InputError(path + ": no rows");
    if (t < 0.0) {
        t = by_t.rbegin()->first;
        return by_t.rbegin()->second;
    }
    for (auto& [tt, rows] : by_t)
        if (std::abs(tt - t) < 1e-9) return rows;
    throw InputError(path + ": no snapshot at requested time");
}

int cmd_entropy(const std::string& cfg_path, double eps_opt, const std::string& thin_csv,
                const std::string& limit_csv, double t_sel) {
    const StudyConfig cfg = load_config(cfg_path);
    const double eps = eps_opt > 0.0 ? eps_opt : config_epsilon(cfg_path);
    auto grid = std::make_shared<const ThinGrid>(FiberProfile(cfg.profile), eps, cfg.nx, cfg.ns);
    double t = t_sel;
    const auto thin = read_snapshot(thin_csv, 6, t);
    require(static_cast<int>(thin.size()) == grid->cells(), "entropy: snapshot does not match the configured grid");
    const auto lim = read_snapshot(limit_csv, 4, t);
    FluidState s;
    s.grid = grid;
    s.t = t;
    for (const auto& r : thin) {
        s.rho.push_back(r[3]);
        s.mx.push_back(r[3] * r[4]);
        s.my.push_back(r[3] * r[5]);
    }
    // piecewise-linear reconstruction of the limit snapshot
    std::vector<double> xs, rs, us;
    for (const auto& r : lim) {
        xs.push_back(r[1]);
        rs.push_back(r[2]);
        us.push_back(r[3]);
    }
    if (grid->periodic()) {
        xs.push_back(xs.front() + 1.0);
        rs.push_back(rs.front());
        us.push_back(us.front());
    }
    auto interp = [&](const std::vector<double>& f, double x) {
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t k = std::clamp<std::size_t>(it - xs.begin(), 1, xs.size() - 1);
        const double th = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
        return (1.0 - th) * f[k - 1] + th * f[k];
    };
    const LimitColumns cols = columns_from_function(*grid, [&](double x) {
        LimitPoint p;
        p.rho = interp(rs, x);
        p.u = interp(us, x);
        return p;
    });
    const Renormalization h(cfg.law, cfg.floor_density());
    const double m = grid->measure();
    const double eu = relative_entropy(*grid, s, cols, h, Against::uhat);
    const double el = relative_entropy(*grid, s, cols, h, Against::lift);
    std::cout << std::setprecision(17) << "t=" << t << "\nmeasure=" << m << "\nE=" << eu << "\nE_norm=" << eu / m
              << "\nE_lift=" << el << "\nE_lift_norm=" << el / m << "\n";
    return 0;
}

int cmd_korn(const std::string& cfg_path, const std::string& out) {
    const StudyConfig cfg = load_config(cfg_path);
    Output o(out);
    CsvWriter w(*o.os);
    w.header({"epsilon", "constant", "kernel_dim", "converged"});
    for (double eps : cfg.epsilons) {
        const ThinGrid grid(FiberProfile(cfg.profile), eps, cfg.nx, cfg.ns);
        const KornEstimate k = korn_estimate(grid, cfg.korn_iter);
        w << eps << k.constant << k.kernel_dim << (k.converged ? 1 : 0);
        w.end_row();
    }
    return 0;
}

int cmd_lift_check(const std::string& cfg_path) {
    const StudyConfig cfg = load_config(cfg_path);
    const FiberProfile p(cfg.profile);
    std::vector<std::pair<std::string, double>> rows;
    const int nsamp = 257;
    double tang = 0.0, div = 0.0;
    for (int k = 0; k < nsamp; ++k) {
        const double x = p.periodic() ? double(k) / nsamp : double(k) / (nsamp - 1);
        for (double xhat : {1.0, -0.7, 2.3}) {
            for (Side sd : {Side::bottom, Side::top}) {
                const BoundaryFrame fr = boundary_frame(p, 1.0, x, sd);
                tang = std::max(tang, std::abs(lifted_boundary_vector(p, x, sd, xhat).dot(fr.nu)) / (1.0 + std::abs(xhat)));
            }
            const FiberPotential v = solve_fiber_neumann(p, x, xhat);
            div = std::max(div, std::abs(v.divergence() - xhat * p.dlog_area(x)));
        }
    }
    rows.emplace_back("tangency", tang);
    rows.emplace_back("fiber_divergence", div);
    if (p.fiber() == FiberKind::interval) {
        double defect = 0.0, dres = 0.0;
        for (int k = 0; k < 17; ++k) {
            const double x = p.periodic() ? k / 17.0 : k / 16.0;
            const auto s = solve_fiber_neumann_sampled(p, x, 1.0, 128);
            defect = std::max(defect, std::abs(s.compatibility_defect));
            dres = std::max(dres, s.divergence_residual);
        }
        rows.emplace_back("sampled_compatibility", defect);
        rows.emplace_back("sampled_divergence", dres);
    }
    const double x0 = p.periodic() ? 0.1 : 0.2, tf = 0.5;
    const FlowAreaCheck fa = flow_area_check(p, x0, tf);
    rows.emplace_back("flow_area", std::abs(fa.area_flow - fa.area_direct));
    rows.emplace_back("flow_boundary_area", std::abs(fa.area_boundary - fa.area_direct));
    rows.emplace_back("area_rate", std::abs(fa.rate_boundary - fa.rate_direct));
    if (p.fiber() == FiberKind::interval) {
        // steady flux rho u A = 1
        double prev = 0.0;
        for (int n : {64, 128}) {
            const int m = p.periodic() ? n : n + 1;
            std::vector<double> rho(m, 1.0), u(m), dr(m, 0.0);
            for (int k = 0; k < m; ++k) u[k] = 1.0 / p.area(double(k) / n);
            const double r = lifted_continuity_residual(p, 0.1, rho, u, dr, 16);
            rows.emplace_back("lifted_continuity_n" + std::to_string(n), r);
            if (prev > 0.0) rows.emplace_back("lifted_continuity_order", std::log2(prev / r));
            prev = r;
        }
    }
    std::cout << std::setprecision(6);
    for (const auto& [name, v] : rows) std::cout << std::left << std::setw(28) << name << v << "\n";
    return 0;
}

int cmd_thermo_check(double gamma, double a, double floor, int samples) {
    PressureLaw law;
    law.gamma = gamma;
    law.a = a;
    law.validate(2);
    const Renormalization h(law, floor);
    double ode = 0.0, h2min = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 600; ++k) {
        const double rho = std::pow(10.0, -3.0 + 6.0 * k / 600.0);
        const HValues v = h.H(rho);
        const double p = law.p(rho);
        ode = std::max(ode, std::abs(rho * v.dH - v.H - p) / std::max(1.0, std::abs(p)));
        h2min = std::min(h2min, v.d2H);
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ur(0.0, 4.0), uu(-3.0, 3.0), rr(0.05, 4.0);
    double imin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k)
        imin = std::min(imin, entropy_integrand(h, ur(rng), uu(rng), rr(rng), uu(rng)));
    const Coercivity c = coercivity_scan(h, {0.5, 2.0}, {0.25, 4.0}, samples);
    std::cout << std::setprecision(6) << std::left << std::setw(20) << "ode_residual" << ode << "\n"
              << std::setw(20) << "min_H''" << h2min << "\n"
              << std::setw(20) << "min_integrand" << imin << "\n"
              << std::setw(20) << "C1" << c.C1 << "\n"
              << std::setw(20) << "C2" << c.C2 << "\n"
              << std::setw(20) << "C3" << c.C3 << "\n";
    return 0;
}

void print_mms(const char* name, const std::vector<MmsLevel>& lv) {
    std::cout << name << "\n" << std::setprecision(4) << std::scientific;
    std::cout << "  n        err_rho     order  err_u       order  steps\n";
    for (const auto& l : lv)
        std::cout << "  " << std::setw(6) << l.n << "  " << l.err_rho << "  " << std::fixed << std::setprecision(3)
                  << std::setw(5) << l.order_rho << "  " << std::scientific << std::setprecision(4) << l.err_u << "  "
                  << std::fixed << std::setprecision(3) << std::setw(5) << l.order_u << "  " << l.steps << "\n"
                  << std::scientific << std::setprecision(4);
    std::cout << std::defaultfloat;
}

int cmd_mms(const std::vector<int>& levels, bool thin, bool limit) {
    MmsParams prm;
    if (!levels.empty()) prm.levels = levels;
    if (limit) {
        print_mms("limit (navier-stokes)", mms_limit(prm));
        print_mms("limit (euler)", mms_limit(prm, LimitModel::euler));
    }
    if (thin) print_mms("thin", mms_thin(prm));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressible Navier-Stokes on collapsing thin domains"};
    app.require_subcommand(1);

    std::string cfg_path, out, thin_csv, limit_csv;
    int workers = 0, samples = 100000;
    bool gnuplot = false, only_thin = false, only_limit = false;
    double eps = 0.0, t_sel = -1.0, gamma = 2.0, a = 1.0, floor = 1.0;
    std::vector<int> levels;

    auto* study = app.add_subcommand("study", "epsilon sweep against the limit solution");
    study->add_option("--config", cfg_path, "config file")->required()->check(CLI::ExistingFile);
    study->add_option("--out", out, "csv output (default: study.output or stdout)");
    study->add_option("--workers", workers, "parallel thin runs")->check(CLI::PositiveNumber);
    study->add_flag("--gnuplot", gnuplot, "also write <csv>.gp");

    auto* run_ns = app.add_subcommand("run-ns", "single thin-domain run, snapshots every sample_dt");
    run_ns->add_option("--config", cfg_path, "config file")->required()->check(CLI::ExistingFile);
    run_ns->add_option("--epsilon", eps, "overrides solver.epsilon");
    run_ns->add_option("--out", out, "csv output");

    auto* run_limit = app.add_subcommand("run-limit", "limit solver run, snapshots every sample_dt");
    run_limit->add_option("--config", cfg_path, "config file")->required()->check(CLI::ExistingFile);
    run_limit->add_option("--out", out, "csv output");

    auto* entropy = app.add_subcommand("entropy", "relative entropy between a thin and a limit snapshot");
    entropy->add_option("--config", cfg_path, "config file of the runs")->required()->check(CLI::ExistingFile);
    entropy->add_option("--epsilon", eps, "overrides solver.epsilon");
    entropy->add_option("thin", thin_csv, "run-ns csv")->required()->check(CLI::ExistingFile);
    entropy->add_option("limit", limit_csv, "run-limit csv")->required()->check(CLI::ExistingFile);
    entropy->add_option("--t", t_sel, "snapshot time (default: last)");

    auto* korn = app.add_subcommand("korn", "Korn constant per epsilon");
    korn->add_option("--config", cfg_path, "config file")->required()->check(CLI::ExistingFile);
    korn->add_option("--out", out, "csv output");

    auto* lift = app.add_subcommand("lift-check", "residuals of the lift identities");
    lift->add_option("--config", cfg_path, "config file with a [profile] section")->required()->check(CLI::ExistingFile);

    auto* thermo = app.add_subcommand("thermo-check", "renormalization and coercivity checks");
    thermo->add_option("--gamma", gamma, "adiabatic exponent");
    thermo->add_option("--a", a, "pressure scale");
    thermo->add_option("--rho-floor", floor, "reference density");
    thermo->add_option("--samples", samples, "random samples")->check(CLI::PositiveNumber);

    auto* mms = app.add_subcommand("mms", "manufactured-solution convergence of both solvers");
    mms->add_option("--levels", levels, "resolutions (default 64 128 256)");
    mms->add_flag("--thin", only_thin, "thin solver only");
    mms->add_flag("--limit", only_limit, "limit solver only");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*study) return cmd_study(cfg_path, out, workers, gnuplot);
        if (*run_ns) return cmd_run_ns(cfg_path, eps, out);
        if (*run_limit) return cmd_run_limit(cfg_path, out);
        if (*entropy) return cmd_entropy(cfg_path, eps, thin_csv, limit_csv, t_sel);
        if (*korn) return cmd_korn(cfg_path, out);
        if (*lift) return cmd_lift_check(cfg_path);
        if (*thermo) return cmd_thermo_check(gamma, a, floor, samples);
        if (*mms) return cmd_mms(levels, !only_limit, !only_thin);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
