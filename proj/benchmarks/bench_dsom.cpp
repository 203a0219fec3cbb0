#include <benchmark/benchmark.h>

#include "dsom/diffusion.hpp"
#include "dsom/linalg.hpp"
#include "dsom/parallel.hpp"
#include "dsom/rng.hpp"
#include "dsom/trainer.hpp"

namespace {

dsom::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    dsom::Rng rng(seed);
    dsom::Matrix m(rows, cols);
    for (float& v : m.data) v = float(rng.next_double()) - 0.5f;
    return m;
}

dsom::Matrix random_unit(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    dsom::Matrix m = random_matrix(rows, cols, seed);
    dsom::normalize_rows(m);
    return m;
}

void BM_MatmulNT(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    const std::size_t k = std::size_t(state.range(1));
    const std::size_t d = 784;
    const dsom::Matrix a = random_matrix(n, d, 1);
    const dsom::Matrix b = random_matrix(k, d, 2);
    dsom::Matrix out;
    for (auto _ : state) {
        dsom::matmul_nt(a, b, out);
        benchmark::DoNotOptimize(out.data.data());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(2 * n * k * d));
}

void BM_MatmulTN(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    const std::size_t k = std::size_t(state.range(1));
    const std::size_t d = 784;
    const dsom::Matrix a = random_matrix(n, k, 3);
    const dsom::Matrix b = random_matrix(n, d, 4);
    dsom::Matrix out;
    for (auto _ : state) {
        dsom::matmul_tn(a, b, out);
        benchmark::DoNotOptimize(out.data.data());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(2 * n * k * d));
}

void BM_NormalizeRows(benchmark::State& state) {
    dsom::Matrix m = random_matrix(std::size_t(state.range(0)), 784, 5);
    for (auto _ : state) {
        dsom::normalize_rows(m);
        benchmark::DoNotOptimize(m.data.data());
    }
}

void BM_ArgmaxRows(benchmark::State& state) {
    const dsom::Matrix m = random_matrix(std::size_t(state.range(0)), 400, 6);
    for (auto _ : state) {
        auto idx = dsom::argmax_rows(m);
        benchmark::DoNotOptimize(idx.data());
    }
}

void BM_ComputeKernel(benchmark::State& state) {
    const std::size_t side = std::size_t(state.range(0));
    for (auto _ : state) {
        auto k = dsom::compute_kernel(side, 0.25f, int(side / 2));
        benchmark::DoNotOptimize(k.values.data.data());
    }
}

void BM_ShiftedFlatRow(benchmark::State& state) {
    const std::size_t side = std::size_t(state.range(0));
    const dsom::DiffusionKernel k = dsom::compute_kernel(side, 0.25f, int(side / 2));
    std::vector<float> out(side * side);
    for (auto _ : state) {
        dsom::shifted_flat_row(k, {side / 2, side / 3}, out.data());
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_DsomEpoch(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    const std::size_t side = std::size_t(state.range(1));
    const int steps = int(state.range(2));
    const dsom::Matrix x = random_unit(n, 784, 7);
    const dsom::DiffusionKernel kernel = dsom::compute_kernel(side, 0.25f, steps);
    dsom::Codebook cb{side, random_unit(side * side, 784, 8)};
    dsom::Matrix scratch;
    for (auto _ : state) {
        auto result = dsom::dsom_epoch(x, cb, kernel, scratch);
        benchmark::DoNotOptimize(result.delta);
    }
    state.SetItemsProcessed(int64_t(state.iterations()) *
                            int64_t(4 * n * side * side * 784));
}

}  // namespace

BENCHMARK(BM_MatmulNT)->Args({2000, 400})->Args({10000, 400})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulTN)->Args({2000, 400})->Args({10000, 400})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NormalizeRows)->Arg(400)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ArgmaxRows)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ComputeKernel)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ShiftedFlatRow)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DsomEpoch)->Args({2000, 20, 10})->Args({2000, 20, 2})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
