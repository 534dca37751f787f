#include <benchmark/benchmark.h>

#include "fracdiff/problems.hpp"
#include "fracdiff/scheme.hpp"

using namespace fracdiff;

namespace {

void run(benchmark::State& state, SchemeKind scheme, SolverKind solver) {
    const auto p = make_case("example2", 1.9, 0.5).spec();
    RunOptions opt;
    opt.M = static_cast<std::size_t>(state.range(0));
    opt.N = static_cast<std::size_t>(state.range(1));
    opt.r = 2.0;
    opt.scheme = scheme;
    opt.epsilon = 1e-9;
    opt.solver.kind = solver;
    double iterations = 0.0;
    for ([[maybe_unused]] auto _ : state) {
        const auto result = run_scheme(p, opt);
        iterations = result.report.avg_iterations;
        benchmark::DoNotOptimize(result.final_state.data());
    }
    state.counters["avg_its"] = iterations;
}

void BM_DidsPrecond(benchmark::State& state) { run(state, SchemeKind::dids, SolverKind::pkrylov); }
void BM_FidsPrecond(benchmark::State& state) { run(state, SchemeKind::fids, SolverKind::pkrylov); }
void BM_FidsPlain(benchmark::State& state) { run(state, SchemeKind::fids, SolverKind::krylov); }
void BM_FidsDirect(benchmark::State& state) { run(state, SchemeKind::fids, SolverKind::direct); }

}  // namespace

BENCHMARK(BM_DidsPrecond)->Args({256, 128})->Args({1024, 128})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FidsPrecond)->Args({256, 128})->Args({1024, 128})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FidsPlain)->Args({256, 128})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FidsDirect)->Args({256, 128})->Unit(benchmark::kMillisecond);
