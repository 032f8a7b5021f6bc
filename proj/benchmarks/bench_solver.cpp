#include <benchmark/benchmark.h>

#include <cmath>

#include "ltswave/experiments.hpp"
#include "ltswave/integrators.hpp"

namespace {

using namespace ltswave;

struct Fixture {
    FeSpace space;
    StabilizedCoeffs cheb;
    IntegratorConfig cfg;
    Scenario scen;
    LtsState state;
};

Fixture make_fixture(double h, int p, Variant variant) {
    Scenario scen = scenario_gaussian_pulse();
    scen.ratio = p;
    RegionSpec rs;
    rs.a = scen.a;
    rs.b = scen.b;
    rs.fine_interval = scen.fine_interval;
    rs.h_coarse = h;
    rs.refinement_ratio = p;
    Mesh1D mesh = build_locally_refined(rs);
    Fixture fx{assemble(mesh, scen.degree, scen.boundary, 1.0, 1),
               coefficients(p, scen.nu),
               {},
               scen,
               {}};
    fx.cfg.p = p;
    fx.cfg.nu = scen.nu;
    fx.cfg.dt = practical_dt(mesh.h_coarse, scen.nu, scen.courant);
    fx.cfg.variant = variant;
    fx.state = initial_steps(fx.space, scen.f, scen.u0, scen.v0, fx.cfg);
    return fx;
}

void bm_step_lf_lts(benchmark::State& state) {
    Fixture fx = make_fixture(0.01, int(state.range(0)), Variant::lf_lts);
    for (auto _ : state) {
        fx.state = step_lf_lts(fx.space, fx.cheb, fx.state, fx.scen.f, fx.cfg);
        benchmark::DoNotOptimize(fx.state.u_curr.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_step_lf_lts)->Arg(2)->Arg(4)->Arg(8);

void bm_step_split_lfc(benchmark::State& state) {
    Fixture fx = make_fixture(0.01, int(state.range(0)), Variant::split_lfc);
    for (auto _ : state) {
        fx.state =
            step_split_lfc(fx.space, fx.cheb, fx.state, fx.scen.f, fx.cfg);
        benchmark::DoNotOptimize(fx.state.u_curr.data());
    }
}
BENCHMARK(bm_step_split_lfc)->Arg(2)->Arg(4);

void bm_two_step_oracle(benchmark::State& state) {
    Fixture fx = make_fixture(0.01, int(state.range(0)), Variant::lf_lts);
    for (auto _ : state) {
        DiscreteField next =
            two_step_oracle(fx.space, fx.cheb, fx.state, fx.scen.f, fx.cfg);
        benchmark::DoNotOptimize(next.data());
    }
}
BENCHMARK(bm_two_step_oracle)->Arg(2)->Arg(4);

void bm_apply_a(benchmark::State& state) {
    Fixture fx = make_fixture(0.005, 2, Variant::lf_lts);
    DiscreteField u = fx.state.u_curr;
    DiscreteField out(u.size());
    for (auto _ : state) {
        apply_a(fx.space, u, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * long(u.size()));
}
BENCHMARK(bm_apply_a);

void bm_load_vector(benchmark::State& state) {
    Fixture fx = make_fixture(0.005, 2, Variant::lf_lts);
    for (auto _ : state) {
        DiscreteField b = load_vector(
            fx.space, [](double x, double t) { return std::sin(3.0 * x) + t; },
            0.5);
        benchmark::DoNotOptimize(b.data());
    }
}
BENCHMARK(bm_load_vector);

}  // namespace

BENCHMARK_MAIN();
