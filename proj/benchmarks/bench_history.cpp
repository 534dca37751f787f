#include <benchmark/benchmark.h>

#include "fracdiff/soe.hpp"
#include "fracdiff/time_mesh.hpp"

#include <vector>

using namespace fracdiff;

namespace {

constexpr std::size_t kDim = 255;

// History term at level M after M - 1 pushes, fast recurrence.
void BM_FastHistoryTerm(benchmark::State& state) {
    const auto M = static_cast<std::size_t>(state.range(0));
    const GradedMesh mesh(M, 2.0, 1.0);
    const auto soe = build_soe(0.5, 1e-10, mesh.tau(1), 1.0);
    FastHistory hist(soe, kDim);
    const std::vector<double> du(kDim, 1e-3);
    for (std::size_t m = 1; m < M; ++m) hist.push(du, mesh.tau(m));
    std::vector<double> out(kDim);
    for ([[maybe_unused]] auto _ : state) {
        hist.history_term(mesh.tau(M), out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["exponentials"] = static_cast<double>(soe.size());
}

// Same quantity summed over all stored levels with L1 weights.
void BM_DirectHistoryTerm(benchmark::State& state) {
    const auto M = static_cast<std::size_t>(state.range(0));
    const GradedMesh mesh(M, 2.0, 1.0);
    const auto w = l1_weights(mesh, 0.5, M);
    std::vector<std::vector<double>> levels(M, std::vector<double>(kDim, 1.0));
    std::vector<double> out(kDim);
    for ([[maybe_unused]] auto _ : state) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t k = 1; k < M; ++k) {
            const double c = w.at(k + 1) - w.at(k);
            for (std::size_t i = 0; i < kDim; ++i) out[i] += c * levels[k][i];
        }
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK(BM_FastHistoryTerm)->RangeMultiplier(4)->Range(64, 1 << 14);
BENCHMARK(BM_DirectHistoryTerm)->RangeMultiplier(4)->Range(64, 1 << 14);
