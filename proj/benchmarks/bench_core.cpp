#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "simplexvol/degeneration.hpp"
#include "simplexvol/eigen.hpp"
#include "simplexvol/hyperbolic.hpp"
#include "simplexvol/klein_mc.hpp"
#include "simplexvol/rng.hpp"
#include "simplexvol/volume.hpp"

using namespace simplexvol;

namespace {

SymMatrix random_symmetric(std::size_t m, std::uint64_t seed) {
    RandomStream rnd(seed);
    SymMatrix a(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) a.set(i, j, rnd.uniform(-1.0, 1.0));
    return a;
}

AngleGramMatrix pi6_triangle() {
    SymMatrix g(3);
    const double c = -std::cos(std::numbers::pi / 6.0);
    for (std::size_t i = 0; i < 3; ++i) {
        g.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < 3; ++j) g.set(i, j, c);
    }
    return AngleGramMatrix{2, g, GeometryTag::Hyperbolic};
}

void BM_SymEigen(benchmark::State& state) {
    const SymMatrix a = random_symmetric(state.range(0), 12);
    for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(a));
}
BENCHMARK(BM_SymEigen)->Arg(4)->Arg(8)->Arg(12);

void BM_Adjugate(benchmark::State& state) {
    const SymMatrix a = random_symmetric(state.range(0), 13);
    for (auto _ : state) benchmark::DoNotOptimize(adjugate(a));
}
BENCHMARK(BM_Adjugate)->Arg(4)->Arg(6);

void BM_Classify(benchmark::State& state) {
    const AngleGramMatrix a = random_angle_gram(state.range(0), GeometryTag::Hyperbolic, 14);
    for (auto _ : state) benchmark::DoNotOptimize(classify_angle_gram(a.g));
}
BENCHMARK(BM_Classify)->Arg(2)->Arg(4);

void BM_OrthantProbability(benchmark::State& state) {
    const AngleGramMatrix a = random_angle_gram(3, GeometryTag::Spherical, 15);
    const MCConfig mc{1, static_cast<std::uint64_t>(state.range(0)), 65'536};
    for (auto _ : state) benchmark::DoNotOptimize(orthant_probability(a.g, mc));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrthantProbability)->Arg(100'000);

void BM_KleinVolume(benchmark::State& state) {
    const AngleGramMatrix a = random_angle_gram(3, GeometryTag::Hyperbolic, 16);
    const SimplexVertices verts = vertices_from_angle_gram(a);
    const MCConfig mc{1, static_cast<std::uint64_t>(state.range(0)), 65'536};
    for (auto _ : state) benchmark::DoNotOptimize(klein_volume(verts, mc));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KleinVolume)->Arg(100'000);

void BM_ConeVolume(benchmark::State& state) {
    const AngleGramMatrix a = pi6_triangle();
    const MCConfig mc{1, static_cast<std::uint64_t>(state.range(0)), 65'536};
    for (auto _ : state)
        benchmark::DoNotOptimize(hyperbolic_volume(a, mc, VolumeMethod::ConeMC));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConeVolume)->Arg(100'000);

void BM_TailSchedule(benchmark::State& state) {
    const AngleGramMatrix a = random_angle_gram(3, GeometryTag::Hyperbolic, 17);
    const SimplexVertices verts = vertices_from_angle_gram(a);
    const Vec center = inscribed_ball(verts).center;
    const Vec radii{0.0, 1.0, 2.0, 4.0, 8.0};
    const MCConfig mc{1, static_cast<std::uint64_t>(state.range(0)), 65'536};
    for (auto _ : state)
        benchmark::DoNotOptimize(tail_volume_schedule(verts, center, radii, mc));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TailSchedule)->Arg(100'000);

void BM_InscribedBall(benchmark::State& state) {
    const AngleGramMatrix a = random_angle_gram(4, GeometryTag::Hyperbolic, 18);
    const SimplexVertices verts = vertices_from_angle_gram(a);
    for (auto _ : state) benchmark::DoNotOptimize(inscribed_ball(verts));
}
BENCHMARK(BM_InscribedBall);

void BM_Lobachevsky(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lobachevsky(x));
        x += 1e-6;
    }
}
BENCHMARK(BM_Lobachevsky);

void BM_PerturbToSimple(benchmark::State& state) {
    const SymMatrix id = SymMatrix::identity(6);
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(perturb_to_simple_eigenvalues(id, 0.01, ++seed));
}
BENCHMARK(BM_PerturbToSimple);

} // namespace

BENCHMARK_MAIN();
