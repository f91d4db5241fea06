#include <random>

#include <benchmark/benchmark.h>

#include "stokes/isomonodromy.hpp"
#include "stokes/leaves.hpp"
#include "stokes/poisson.hpp"

using namespace stokes;
using surfaces::Kind;
using surfaces::SurfaceFamily;

namespace {

void BM_GoldmanBracket(benchmark::State& state) {
    const SurfaceFamily f(Kind::An, static_cast<int>(state.range(0)));
    const auto form = poisson::incidence_form(f);
    const auto s = surfaces::stokes_matrix_symbolic(f);
    for (auto _ : state) benchmark::DoNotOptimize(poisson::goldman_bracket(s.entry(0, 2), s.entry(1, 3), form));
}
BENCHMARK(BM_GoldmanBracket)->Arg(4)->Arg(5)->Arg(6);

void BM_VerifyBracketIdentity(benchmark::State& state) {
    const SurfaceFamily f(Kind::CFP, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(poisson::verify_bracket_identity(f));
}
BENCHMARK(BM_VerifyBracketIdentity)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_StokesMatrix(benchmark::State& state) {
    const SurfaceFamily f(Kind::CFP, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    const auto pt = surfaces::random_point(f, rng);
    for (auto _ : state) benchmark::DoNotOptimize(surfaces::stokes_matrix(pt));
}
BENCHMARK(BM_StokesMatrix)->Arg(4)->Arg(8)->Arg(16);

void BM_JordanProfile(benchmark::State& state) {
    const SurfaceFamily f(Kind::An, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(2);
    const auto M = leaves::monodromy_product(surfaces::stokes_matrix(surfaces::random_point(f, rng)));
    for (auto _ : state) benchmark::DoNotOptimize(leaves::jordan_profile(M));
}
BENCHMARK(BM_JordanProfile)->Arg(4)->Arg(8);

void BM_PointJordanProfile(benchmark::State& state) {
    const SurfaceFamily f(Kind::An, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(3);
    const auto pt = leaves::random_generic_point(f, rng);
    for (auto _ : state) benchmark::DoNotOptimize(leaves::point_jordan_profile(pt));
}
BENCHMARK(BM_PointJordanProfile)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_IntegrateFlow(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const auto s = isomonodromy::make_state({0.0, 0.5, 3.0}, isomonodromy::random_state(3, rng).V);
    for (auto _ : state) benchmark::DoNotOptimize(isomonodromy::integrate_flow(s, 1, 1.0, 1e-3));
}
BENCHMARK(BM_IntegrateFlow)->Unit(benchmark::kMillisecond);

void BM_IsospectralSolve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(leaves::isospectral_solve({0.7, -0.4, 1.1}));
}
BENCHMARK(BM_IsospectralSolve);

} // namespace

BENCHMARK_MAIN();
