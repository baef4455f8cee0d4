#include <benchmark/benchmark.h>

#include "rankleap/approx.hpp"
#include "rankleap/io.hpp"
#include "rankleap/oracle.hpp"
#include "rankleap/samples.hpp"

using namespace rankleap;

namespace {

Matrix random_invertible(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(n, n);
    for (auto& z : m.data()) z = rng.complex_box(1.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 3.0;
    return m;
}

void BM_Schur(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_invertible(n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(schur(a));
}
BENCHMARK(BM_Schur)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_JacobiSvd(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_invertible(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_svd(a));
}
BENCHMARK(BM_JacobiSvd)->Arg(4)->Arg(8)->Arg(16);

void BM_GroupAction(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const Tensor3 a = sample_random(d, d, d, 3);
    const GLTriple g{random_invertible(d, 4), random_invertible(d, 5), random_invertible(d, 6)};
    for (auto _ : state) benchmark::DoNotOptimize(act(g, a));
}
BENCHMARK(BM_GroupAction)->Arg(4)->Arg(8)->Arg(16);

void BM_BiRankCheck(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const Tensor3 a = sample_random(m, m, 2, 7);
    for (auto _ : state) benchmark::DoNotOptimize(bi_rank_check(a));
}
BENCHMARK(BM_BiRankCheck)->Arg(2)->Arg(4)->Arg(8);

void BM_RankNApproximate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Tensor3 a = sample_random(n, n, 2, 9);
    for (auto _ : state) benchmark::DoNotOptimize(rank_n_approximate(a, 1e-4, 11));
}
BENCHMARK(BM_RankNApproximate)->Arg(2)->Arg(4)->Arg(8);

void BM_AlsSweeps(benchmark::State& state) {
    const Tensor3 w = sample_w();
    ALSOptions opts;
    opts.restarts = 1;
    opts.max_iters = static_cast<int>(state.range(0));
    opts.stop_on_success = false;
    for (auto _ : state) benchmark::DoNotOptimize(als_fit(w, 2, opts, 13));
}
BENCHMARK(BM_AlsSweeps)->Arg(100)->Arg(1000);

void BM_TensorSerialize(benchmark::State& state) {
    const Tensor3 a = sample_random(6, 6, 6, 15);
    for (auto _ : state) benchmark::DoNotOptimize(serialize_tensor(a));
}
BENCHMARK(BM_TensorSerialize);

}  // namespace

BENCHMARK_MAIN();
