#include "collapse/study.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <thread>

#include "collapse/csv.hpp"
#include "collapse/korn.hpp"
#include "collapse/thin_solver.hpp"

namespace collapse {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

const std::vector<std::string> kColumns = {
    "epsilon", "mu",  "eta", "t",    "E0_norm", "E_norm",      "E_lift_norm", "dissipation_cum",
    "remainder_cum", "slack", "I",  "II", "III", "IV", "V", "korn", "korn_kernel", "Lambda",
    "rho_min", "rho_max", "error"};

double fibre_shear(double x, double s, bool periodic) {
    const double fx = periodic ? 1.0 + 0.5 * std::cos(kTau * x) : std::sin(std::numbers::pi * x);
    return std::sin(std::numbers::pi * s) * fx;
}

FluidState initial_state(const StudyConfig& cfg, std::shared_ptr<const ThinGrid> grid, double amp) {
    const bool per = grid->periodic();
    const FiberProfile& p = grid->profile();
    const double eps = grid->eps();
    return init_from_fields(grid, [&](double x, double y, double& rho, Vec2& u) {
        rho = cfg.initial.rho_hat0(x);
        const double uh = cfg.initial.u_hat0(x, per);
        const double g = p.dlog_area(x);
        const double d = amp == 0.0 ? 0.0 : amp * fibre_shear(x, y / (eps * p.area(x)), per);
        // the perturbation is lifted like a base field, so it stays tangent to the walls
        u = Vec2(uh + d, g * y * (uh + d));
    });
}

LimitColumns initial_columns(const StudyConfig& cfg, const ThinGrid& grid) {
    return columns_from_function(grid, [&](double x) {
        LimitPoint pt;
        pt.rho = cfg.initial.rho_hat0(x);
        pt.u = cfg.initial.u_hat0(x, grid.periodic());
        return pt;
    });
}

}  // namespace

StudyMode parse_study_mode(const std::string& s) {
    if (s == "ns" || s == "ns_limit" || s == "ns_limit_study") return StudyMode::ns_limit;
    if (s == "euler" || s == "euler_limit" || s == "euler_limit_study") return StudyMode::euler_limit;
    throw InputError("unknown study mode '" + s + "' (ns_limit|euler_limit)");
}

std::string to_string(StudyMode m) { return m == StudyMode::ns_limit ? "ns_limit" : "euler_limit"; }

double InitialData::rho_hat0(double x) const { return rho0 * (1.0 + rho_amp * std::sin(kTau * x)); }

double InitialData::u_hat0(double x, bool periodic) const {
    if (periodic) return u_a + u_b * std::sin(kTau * x);
    return u_a * std::sin(std::numbers::pi * x) + u_b * std::sin(kTau * x);
}

void StudyConfig::validate() const {
    FiberProfile p(profile);
    law.validate(p.ambient_dim());
    require(!epsilons.empty(), "study: need at least one epsilon");
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        require(epsilons[k] > 0.0, "study: epsilons must be positive");
        if (k > 0) require(epsilons[k] < epsilons[k - 1], "study: epsilons must be strictly decreasing");
    }
    require(nx >= 8 && ns >= 4, "study: need nx >= 8 and ns >= 4");
    require(limit_factor >= 2 && limit_factor % 2 == 0, "study: limit_factor must be an even integer >= 2");
    require(t_end > 0.0 && sample_dt > 0.0 && sample_dt <= t_end, "study: need 0 < sample_dt <= t_end");
    require(workers >= 1, "study: workers must be >= 1");
    require(initial.rho0 > 0.0 && std::abs(initial.rho_amp) < 1.0, "study: initial density must stay positive");
    require(initial.delta0 >= 0.0, "study: delta0 must be non-negative");
    if (mode == StudyMode::ns_limit) require(mu > 0.0 && eta > 0.0, "study: ns mode needs mu, eta > 0");
    else require(kappa > 0.0, "study: euler mode needs kappa > 0");
}

double StudyConfig::floor_density() const {
    if (rho_floor >= 0.0) return rho_floor;
    return initial.rho0 * (1.0 - std::abs(initial.rho_amp));
}

LimitTrajectory run_study_limit(const StudyConfig& cfg) {
    FiberProfile p(cfg.profile);
    LimitConfig lc;
    lc.law = cfg.law;
    lc.mu = cfg.mu;
    lc.eta = cfg.eta;
    lc.ambient_dim = p.ambient_dim();
    lc.model = cfg.mode == StudyMode::ns_limit ? LimitModel::navier_stokes : LimitModel::euler;
    lc.cfl = cfg.cfl;
    lc.kappa4 = cfg.kappa4;
    lc.t_end = cfg.t_end;
    lc.sample_dt = cfg.sample_dt;
    LimitSolver solver(p, lc, cfg.limit_factor * cfg.nx);
    const bool per = p.periodic();
    const auto s0 = solver.initial([&](double x) { return cfg.initial.rho_hat0(x); },
                                   [&](double x) { return cfg.initial.u_hat0(x, per); });
    return solver.run(s0);
}

double perturbation_amplitude(const StudyConfig& cfg, const ThinGrid& grid, double delta0) {
    require(delta0 > 0.0, "perturbation: delta0 must be positive");
    auto shared = std::make_shared<const ThinGrid>(grid);
    const LimitColumns cols = initial_columns(cfg, grid);
    const Renormalization h(cfg.law, cfg.floor_density());
    const double m = grid.measure();
    auto f = [&](double amp) {
        const FluidState s = initial_state(cfg, shared, amp);
        return relative_entropy(grid, s, cols, h, Against::uhat) / m - delta0;
    };
    double hi = 0.1;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e3) throw SolverError("perturbation: cannot reach the requested initial entropy");
    }
    if (f(0.0) >= 0.0) return 0.0;
    std::uintmax_t it = 100;
    const auto r = boost::math::tools::toms748_solve(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(50), it);
    return 0.5 * (r.first + r.second);
}

std::vector<StudyRow> run_study_case(const StudyConfig& cfg, const LimitTrajectory& limit, double eps) {
    const double mu = cfg.mode == StudyMode::euler_limit ? cfg.kappa * eps : cfg.mu;
    const double eta = cfg.mode == StudyMode::euler_limit ? cfg.kappa * eps : cfg.eta;
    std::vector<StudyRow> rows;
    StudyRow base;
    base.epsilon = eps;
    base.mu = mu;
    base.eta = eta;
    base.Lambda = limit.certificate.Lambda;
    base.rho_min = limit.certificate.rho_min;
    base.rho_max = limit.certificate.rho_max;
    try {
        auto grid = std::make_shared<const ThinGrid>(FiberProfile(cfg.profile), eps, cfg.nx, cfg.ns);
        if (cfg.korn) {
            const KornEstimate k = korn_estimate(*grid, cfg.korn_iter);
            base.korn = k.constant;
            base.korn_kernel = k.kernel_dim;
        }
        SolverConfig sc;
        sc.mu = mu;
        sc.eta = eta;
        sc.law = cfg.law;
        sc.cfl = cfg.cfl;
        sc.t_end = cfg.t_end;
        sc.kappa4 = cfg.kappa4;
        ThinSolver solver(grid, sc);
        const double amp = cfg.initial.delta0 > 0.0 ? perturbation_amplitude(cfg, *grid, cfg.initial.delta0) : 0.0;
        FluidState st = initial_state(cfg, grid, amp);

        MeterParams mp;
        mp.renorm = Renormalization(cfg.law, cfg.floor_density());
        mp.mu = mu;
        mp.eta = eta;
        mp.ambient_dim = grid->profile().ambient_dim();

        std::vector<EntropyReport> reps;
        for (std::size_t k = 0; k < limit.samples.size(); ++k) {
            solver.advance_to(st, limit.samples[k].t);
            const auto grads = solver.velocity_gradients(st);
            const LimitColumns cols = columns_from_trajectory(limit, k, *grid);
            reps.push_back(meter(*grid, st, grads, cols, mp));
        }
        const SlackSeries sl = inequality_check(reps);
        for (std::size_t k = 0; k < reps.size(); ++k) {
            StudyRow r = base;
            r.t = reps[k].t;
            r.E0_norm = reps.front().E_normalized;
            r.E_norm = reps[k].E_normalized;
            r.E_lift_norm = reps[k].E_lift_normalized;
            r.dissipation_cum = sl.cum_dissipation[k];
            r.remainder_cum = sl.cum_remainder[k];
            r.slack = sl.slack[k];
            const double m = reps[k].measure;
            r.I = reps[k].I / m;
            r.II = reps[k].II / m;
            r.III = reps[k].III / m;
            r.IV = reps[k].IV / m;
            r.V = reps[k].V / m;
            rows.push_back(r);
        }
    } catch (const std::exception& e) {
        StudyRow r = base;
        r.t = std::nan("");
        r.E0_norm = r.E_norm = r.E_lift_norm = std::nan("");
        r.error = e.what();
        rows.push_back(r);
    }
    return rows;
}

std::vector<StudyRow> run_study(const StudyConfig& cfg) {
    cfg.validate();
    LimitTrajectory limit;
    try {
        limit = run_study_limit(cfg);
    } catch (const std::exception& e) {
        std::vector<StudyRow> rows;
        for (double eps : cfg.epsilons) {
            StudyRow r;
            r.epsilon = eps;
            r.t = r.E0_norm = r.E_norm = r.E_lift_norm = std::nan("");
            r.error = std::string("limit run: ") + e.what();
            rows.push_back(r);
        }
        return rows;
    }
    const std::size_t n = cfg.epsilons.size();
    std::vector<std::vector<StudyRow>> parts(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < n; k = next++) parts[k] = run_study_case(cfg, limit, cfg.epsilons[k]);
    };
    const int nw = std::min<int>(cfg.workers, static_cast<int>(n));
    if (nw <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::vector<StudyRow> rows;
    for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
    return rows;
}

void write_study_csv(std::ostream& os, const std::vector<StudyRow>& rows) {
    CsvWriter w(os);
    w.header(kColumns);
    for (const auto& r : rows) {
        w << r.epsilon << r.mu << r.eta << r.t << r.E0_norm << r.E_norm << r.E_lift_norm << r.dissipation_cum
          << r.remainder_cum << r.slack << r.I << r.II << r.III << r.IV << r.V << r.korn << r.korn_kernel << r.Lambda
          << r.rho_min << r.rho_max << r.error;
        w.end_row();
    }
}

std::vector<StudyRow> read_study_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InputError("study csv: empty input");
    const auto head = split_csv_line(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t k = 0; k < head.size(); ++k) col[head[k]] = k;
    for (const char* need : {"epsilon", "t", "E0_norm", "E_norm"})
        if (!col.count(need)) throw InputError(std::string("study csv: missing column ") + need);
    std::vector<StudyRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        auto num = [&](const char* name) {
            auto it = col.find(name);
            if (it == col.end() || it->second >= f.size() || f[it->second].empty()) return 0.0;
            return std::stod(f[it->second]);
        };
        StudyRow r;
        r.epsilon = num("epsilon");
        r.mu = num("mu");
        r.eta = num("eta");
        r.t = num("t");
        r.E0_norm = num("E0_norm");
        r.E_norm = num("E_norm");
        r.E_lift_norm = num("E_lift_norm");
        r.dissipation_cum = num("dissipation_cum");
        r.remainder_cum = num("remainder_cum");
        r.slack = num("slack");
        r.I = num("I");
        r.II = num("II");
        r.III = num("III");
        r.IV = num("IV");
        r.V = num("V");
        r.korn = num("korn");
        r.korn_kernel = static_cast<int>(num("korn_kernel"));
        r.Lambda = num("Lambda");
        r.rho_min = num("rho_min");
        r.rho_max = num("rho_max");
        if (col.count("error") && col["error"] < f.size()) r.error = f[col["error"]];
        rows.push_back(r);
    }
    return rows;
}

void write_gnuplot(std::ostream& os, const std::string& csv_path, double t_select) {
    os << "set datafile separator ','\n"
       << "set logscale xy\n"
       << "set xlabel 'epsilon'\n"
       << "set ylabel 'E_norm(t)'\n"
       << "set key left top\n"
       << "plot '" << csv_path << "' using (abs($4-" << t_select << ")<1e-9 ? $1 : 1/0):6 with linespoints title 'E_norm', \\\n"
       << "     '' using (abs($4-" << t_select << ")<1e-9 ? $1 : 1/0):7 with linespoints title 'E_lift_norm'\n";
}

RateFit fit_rate(const std::vector<StudyRow>& rows, double t_select) {
    std::vector<std::pair<double, double>> pts;
    RateFit fit;
    fit.bound_min = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        if (!r.error.empty() || std::abs(r.t - t_select) > 1e-9) continue;
        if (!(r.E_norm > 0.0) || !(r.epsilon > 0.0)) continue;
        pts.emplace_back(std::log(r.epsilon), std::log(r.E_norm));
        const double q = r.E_norm / (r.epsilon + r.E0_norm);
        fit.bound_constant = std::max(fit.bound_constant, q);
        fit.bound_min = std::min(fit.bound_min, q);
    }
    if (pts.size() < 3) throw InputError("fit_rate: need at least 3 rows at the selected time");
    const double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.points = static_cast<int>(pts.size());
    return fit;
}

}  // namespace collapse
