#include <benchmark/benchmark.h>

#include "fracdiff/dense.hpp"
#include "fracdiff/ifl.hpp"
#include "fracdiff/toeplitz.hpp"

#include <vector>

using namespace fracdiff;

namespace {

std::vector<double> ramp(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / (1.0 + static_cast<double>(i));
    return v;
}

void BM_ToeplitzFft(benchmark::State& state) {
    const auto d = build_ifl(1.5, 1.0, static_cast<std::size_t>(state.range(0)));
    const ToeplitzOperator op(d.first_col);
    const auto v = ramp(op.size());
    std::vector<double> out(op.size());
    ToeplitzWorkspace ws;
    for ([[maybe_unused]] auto _ : state) {
        op.apply(v, out, ws);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(state.range(0));
}

void BM_ToeplitzDense(benchmark::State& state) {
    const auto d = build_ifl(1.5, 1.0, static_cast<std::size_t>(state.range(0)));
    const auto a = DenseMatrix::symmetric_toeplitz(d.first_col);
    const auto v = ramp(a.rows());
    for ([[maybe_unused]] auto _ : state) {
        auto out = a.multiply(v);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(state.range(0));
}

// N - 1 is odd here, so the solve goes through the chirp-z transform.
void BM_CirculantSolve(benchmark::State& state) {
    const auto d = build_ifl(1.5, 1.0, static_cast<std::size_t>(state.range(0)));
    const auto pc = build_preconditioner(d, 10.0, 1.0);
    const auto v = ramp(pc.size());
    std::vector<double> out(pc.size());
    PreconditionerWorkspace ws;
    for ([[maybe_unused]] auto _ : state) {
        pc.solve(v, out, ws);
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK(BM_ToeplitzFft)->RangeMultiplier(4)->Range(64, 1 << 14)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_ToeplitzDense)->RangeMultiplier(4)->Range(64, 1 << 12)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_CirculantSolve)->RangeMultiplier(4)->Range(64, 1 << 14);
