#include <benchmark/benchmark.h>

#include <cmath>

#include "invsurf/developable.hpp"
#include "invsurf/verify.hpp"

using namespace invsurf;

namespace {

TangentDevelopableModel make_developable() {
    const double params[2] = {1.0, 1.0};
    return TangentDevelopableModel(builtin_curve("helix", params),
                                   {0.0, 2.0 * M_PI, 0.2, 1.5});
}

void BM_expr_eval_surface_jet(benchmark::State& state) {
    const CompiledMap map = parse("u*cos(v), u*sin(v), 2*v");
    double u = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(map.eval_surface(u, 0.3));
        u += 1e-9;
    }
}
BENCHMARK(BM_expr_eval_surface_jet);

void BM_frenet_helix(benchmark::State& state) {
    const double params[2] = {1.0, 1.0};
    const CurveModel helix = builtin_curve("helix", params);
    double s = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(frenet(helix, s));
        s += 1e-9;
    }
}
BENCHMARK(BM_frenet_helix);

void BM_fund_forms_developable(benchmark::State& state) {
    const TangentDevelopableModel dev = make_developable();
    double s = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fund_forms(td_jet(dev, s, 0.8)));
        s += 1e-9;
    }
}
BENCHMARK(BM_fund_forms_developable);

void BM_invert_jet(benchmark::State& state) {
    const TangentDevelopableModel dev = make_developable();
    const InversionSpec spec;
    const SurfaceJet2 jet = td_jet(dev, 1.0, 0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(invert_jet(spec, jet));
    }
}
BENCHMARK(BM_invert_jet);

void BM_christoffel_inverted(benchmark::State& state) {
    const TangentDevelopableModel dev = make_developable();
    const InversionSpec spec;
    const SurfaceJet2 jet = invert_jet(spec, td_jet(dev, 1.0, 0.8));
    for (auto _ : state) {
        benchmark::DoNotOptimize(christoffel(jet));
    }
}
BENCHMARK(BM_christoffel_inverted);

void BM_run_suite_small(benchmark::State& state) {
    SceneConfig scene = default_scene();
    scene.grid.s_count = 5;
    scene.grid.u_count = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_suite(scene));
    }
}
BENCHMARK(BM_run_suite_small)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
