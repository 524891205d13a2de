#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "collapse/entropy.hpp"
#include "collapse/korn.hpp"
#include "collapse/limit_solver.hpp"
#include "collapse/thin_solver.hpp"

using namespace collapse;
using std::numbers::pi;

namespace {

FiberProfile cosine_profile() {
    ProfileSpec s;
    s.base = BaseKind::circle;
    s.shape = ShapeKind::cosine;
    s.a = 1.5;
    s.b = 0.5;
    return FiberProfile(s);
}

double rho0(double x) { return 1.0 + 0.05 * std::sin(2 * pi * x); }
double u0(double x) { return 0.1 * std::sin(2 * pi * x); }

}  // namespace

static void BM_ThinStep(benchmark::State& st) {
    const int nx = static_cast<int>(st.range(0));
    auto g = std::make_shared<const ThinGrid>(cosine_profile(), 0.1, nx, 16);
    const ThinSolver solver(g, SolverConfig{});
    FluidState s = init_well_prepared(g, rho0, u0);
    const double dt = solver.stable_dt(s);
    for (auto _ : st) {
        solver.step(s, dt);
        benchmark::DoNotOptimize(s.rho.data());
    }
    st.SetItemsProcessed(st.iterations() * g->cells());
}
BENCHMARK(BM_ThinStep)->Arg(64)->Arg(128)->Arg(256);

static void BM_LimitStep(benchmark::State& st) {
    LimitConfig cfg;
    const LimitSolver solver(cosine_profile(), cfg, static_cast<int>(st.range(0)));
    LimitState s = solver.initial(rho0, u0);
    const double dt = solver.stable_dt(s);
    for (auto _ : st) {
        solver.step(s, dt);
        benchmark::DoNotOptimize(s.u.data());
    }
}
BENCHMARK(BM_LimitStep)->Arg(512)->Arg(1024);

static void BM_Meter(benchmark::State& st) {
    auto g = std::make_shared<const ThinGrid>(cosine_profile(), 0.1, 128, 16);
    const ThinSolver solver(g, SolverConfig{});
    const FluidState s = init_well_prepared(g, rho0, u0);
    const auto grads = solver.velocity_gradients(s);
    const LimitColumns lc = columns_from_function(*g, [](double x) {
        LimitPoint p;
        p.rho = rho0(x);
        p.u = u0(x);
        return p;
    });
    MeterParams prm;
    prm.renorm = Renormalization(PressureLaw{}, 0.9);
    for (auto _ : st) benchmark::DoNotOptimize(meter(*g, s, grads, lc, prm));
}
BENCHMARK(BM_Meter);

static void BM_Korn(benchmark::State& st) {
    const ThinGrid g(cosine_profile(), 0.1, 32, 8);
    for (auto _ : st) benchmark::DoNotOptimize(korn_estimate(g, 50));
}
BENCHMARK(BM_Korn)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
