#include <benchmark/benchmark.h>

#include "ppd/dirichlet.hpp"
#include "ppd/goursat.hpp"
#include "ppd/representation.hpp"
#include "ppd/verify.hpp"

namespace {

using namespace ppd;

Grid2D unit_square(int n) { return Grid2D{make_grid(1.0, n), make_grid(1.0, n)}; }

CoefficientExprs bench_coefficients() {
    CoefficientExprs e;
    e.a21 = parse("0.3*x2");
    e.a12 = parse("0.2");
    e.a11 = parse("0.5*x1");
    e.a00 = parse("1");
    return e;
}

void BM_ReconstructField(benchmark::State& state) {
    const ExtractedTraces ex = extract_traces(parse("sin(x1)*exp(x2)"), unit_square(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_field(ex.traces, ex.w));
    state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_ReconstructField)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oN);

void BM_SolveGoursat(benchmark::State& state) {
    const Grid2D g = unit_square(static_cast<int>(state.range(0)));
    const ManufacturedCase mc = manufactured_problem(parse("sin(x1)*exp(x2)"), bench_coefficients(), g);
    const GoursatProblem gp{extract_traces(mc.u, g).traces, mc.coeffs, mc.problem.rhs};
    for (auto _ : state) benchmark::DoNotOptimize(solve_goursat(gp));
}
BENCHMARK(BM_SolveGoursat)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_AssembleClosure(benchmark::State& state) {
    const ManufacturedCase mc = manufactured_problem(parse("sin(x1)*exp(x2)"), bench_coefficients(),
                                                     unit_square(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_closure_system(mc.problem));
}
BENCHMARK(BM_AssembleClosure)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_SolveDirichlet(benchmark::State& state) {
    const ManufacturedCase mc = manufactured_problem(parse("sin(x1)*exp(x2)"), bench_coefficients(),
                                                     unit_square(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(solve_dirichlet(mc.problem));
}
BENCHMARK(BM_SolveDirichlet)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
