#include <benchmark/benchmark.h>

#include "conley/homology/homology.hpp"
#include "conley/homology/smith.hpp"
#include "conley/index/connection.hpp"

#include <random>

using namespace conley;

namespace {

dynamics::TransitionGraph saddle(int cells) {
    const auto f = dynamics::VectorField::from_catalog("saddle2d", {});
    return dynamics::TransitionGraph::build(f, dynamics::Grid({-1.0, -1.0}, {1.0, 1.0}, {cells, cells}),
                                            {0.2, 20, 8}, 0);
}

pairs::SlicedCubeSet everything(const dynamics::TransitionGraph& G) {
    std::vector<dynamics::CubeId> all(G.grid().cube_count());
    for (dynamics::CubeId i = 0; i < all.size(); ++i) all[i] = i;
    return pairs::SlicedCubeSet::constant(G.slice_count(), all.size(), all);
}

void BM_OuterApproximation(benchmark::State& state) {
    const auto f = dynamics::VectorField::from_catalog("saddle2d", {});
    const int n = static_cast<int>(state.range(0));
    const dynamics::Grid g({-1.0, -1.0}, {1.0, 1.0}, {n, n});
    for (auto _ : state) benchmark::DoNotOptimize(dynamics::outer_approximation(f, g, 0, 0.2, 1));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_OuterApproximation)->Arg(16)->Arg(32)->Arg(64);

void BM_RelativeHomology(benchmark::State& state) {
    std::mt19937 rng(1);
    std::bernoulli_distribution keep(0.6);
    const int side = static_cast<int>(state.range(0));
    std::vector<homology::ElementaryCube> tops;
    for (int x = 0; x < side; ++x)
        for (int y = 0; y < side; ++y)
            if (keep(rng)) tops.push_back(homology::ElementaryCube{{x, false}, {y, false}});
    const auto set = homology::CubicalSet::closure_of(2, tops);
    const auto ring = state.range(1) == 0 ? homology::Ring::F2 : homology::Ring::Q;
    for (auto _ : state) benchmark::DoNotOptimize(homology::relative_homology(set, homology::CubicalSet(2), ring));
}
BENCHMARK(BM_RelativeHomology)->Args({16, 0})->Args({32, 0})->Args({32, 1});

void BM_SmithNormalForm(benchmark::State& state) {
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> entry(-3, 3);
    const auto n = static_cast<std::size_t>(state.range(0));
    homology::IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = (i + j) % 3 == 0 ? entry(rng) : 0;
    for (auto _ : state) benchmark::DoNotOptimize(homology::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(12);

void BM_SaddleIndex(benchmark::State& state) {
    const auto G = saddle(static_cast<int>(state.range(0)));
    const auto N = everything(G);
    index::IndexOptions opt;
    opt.burn_in = 10;
    for (auto _ : state) benchmark::DoNotOptimize(index::conley_index(N, G, opt));
}
BENCHMARK(BM_SaddleIndex)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LogisticConnection(benchmark::State& state) {
    const auto f = dynamics::VectorField::from_catalog("logistic1d", {});
    const dynamics::Grid grid({-0.5}, {1.5}, {40});
    const auto G = dynamics::TransitionGraph::build(f, grid, {0.25, 24, 8}, 0);
    const auto NA = pairs::SlicedCubeSet::constant(G.slice_count(), 40, grid.cells_in_box(std::vector{0.5}, std::vector{1.5}));
    const auto T = pairs::build_index_triple(everything(G), NA, G);
    for (auto _ : state) benchmark::DoNotOptimize(index::connecting_homomorphism(T, G, 1, homology::Ring::F2, 12));
}
BENCHMARK(BM_LogisticConnection)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
