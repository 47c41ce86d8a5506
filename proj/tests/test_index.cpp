#include "doctest.h"

#include "conley/errors.hpp"
#include "conley/index/connection.hpp"

using namespace conley;
using namespace conley::dynamics;
using namespace conley::pairs;
using namespace conley::index;

namespace {

TransitionGraph graph_of(const std::string& name, std::map<std::string, double> params, Grid grid, double tau,
                         std::size_t K) {
    return TransitionGraph::build(VectorField::from_catalog(name, params), grid, {tau, K, 8}, 0);
}

TransitionGraph saddle() { return graph_of("saddle2d", {}, Grid({-1.0, -1.0}, {1.0, 1.0}, {16, 16}), 0.2, 20); }
TransitionGraph logistic() { return graph_of("logistic1d", {}, Grid({-0.5}, {1.5}, {40}), 0.25, 24); }
TransitionGraph twowell() { return graph_of("twowell1d", {}, Grid({0.4}, {2.6}, {44}), 0.25, 24); }

SlicedCubeSet everything(const TransitionGraph& G) {
    std::vector<CubeId> all(G.grid().cube_count());
    for (CubeId i = 0; i < all.size(); ++i) all[i] = i;
    return SlicedCubeSet::constant(G.slice_count(), all.size(), all);
}

SlicedCubeSet box(const TransitionGraph& G, std::vector<double> lo, std::vector<double> hi) {
    return SlicedCubeSet::constant(G.slice_count(), G.grid().cube_count(), G.grid().cells_in_box(lo, hi));
}

bool is_path(const Path& p, const TransitionGraph& G) {
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (p[i].slice != p[i - 1].slice + 1) return false;
        const auto img = G.image(p[i - 1].slice, p[i - 1].cube);
        if (std::find(img.begin(), img.end(), p[i].cube) == img.end()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("saddle index is one class in degree one") {
    const auto G = saddle();
    IndexOptions opt;
    opt.burn_in = 10;
    const auto run = conley_index(everything(G), G, opt);
    CHECK(run.result.ranks == std::vector<std::size_t>{0, 1, 0});
    CHECK(run.result.k0 == 10);
    CHECK_FALSE(run.result.witnesses.empty());
    const auto laws = check_direct_system_laws(run.system);
    CHECK(laws.identities);
    CHECK(laws.functorial);
    CHECK(laws.failures.empty());
}

TEST_CASE("transition maps are identities on a stationary saddle pair") {
    const auto G = saddle();
    const auto P = thicken_exit(build_index_pair(everything(G), G), G, 1);
    const auto g = transition_map(P, G.grid(), 12, 15, homology::Ring::F2);
    CHECK(g == GradedMap::identity(homology::Ring::F2, {0, 1, 0}));
    CHECK(transition_map(P, G.grid(), 12, 12, homology::Ring::Q) == GradedMap::identity(homology::Ring::Q, {0, 1, 0}));
    CHECK_THROWS_AS(transition_map(P, G.grid(), 12, 13, homology::Ring::Z), UnsupportedRing);
}

TEST_CASE("block complex embeds both end slices") {
    const auto G = saddle();
    const auto P = build_index_pair(everything(G), G);
    const auto B = block_complex(P, G.grid(), 11, 13);
    const auto hb = homology::relative_homology(B.N1, B.N2, homology::Ring::F2);
    CHECK(hb.ranks() == std::vector<std::size_t>{0, 1, 0, 0});
    const auto h11 = slice_pair_homology(P, G.grid(), 11, homology::Ring::F2);
    CHECK(slice_inclusion_map(h11, 11, B, hb).is_isomorphism());
    CHECK_THROWS_AS(slice_inclusion_map(h11, 14, B, hb), PreconditionError);
    CHECK_THROWS_AS(block_complex(P, G.grid(), 13, 11), PreconditionError);
}

TEST_CASE("attractor index is a point") {
    const auto G = graph_of("decay", {}, Grid({-1.0}, {1.0}, {8}), 0.5, 10);
    IndexOptions opt;
    opt.burn_in = 5;
    const auto run = conley_index(everything(G), G, opt);
    CHECK(run.result.ranks == std::vector<std::size_t>{1, 0});
}

TEST_CASE("index over Q agrees with F2 on the saddle") {
    const auto G = saddle();
    IndexOptions opt;
    opt.burn_in = 10;
    opt.ring = homology::Ring::Q;
    CHECK(conley_index(everything(G), G, opt).result.ranks == std::vector<std::size_t>{0, 1, 0});
}

TEST_CASE("tight neighbourhoods are rejected") {
    const auto G = saddle();
    const auto inv = invariant_part(everything(G), G);
    const auto tight = SlicedCubeSet::constant(G.slice_count(), G.grid().cube_count(), inv.slice(10));
    CHECK_THROWS_AS(conley_index(tight, G, {}), NotIsolating);
}

TEST_CASE("burn-in at the last slice cannot stabilize") {
    const auto G = saddle();
    IndexOptions opt;
    opt.burn_in = G.last_slice();
    CHECK_THROWS_AS(conley_index(everything(G), G, opt), NotStabilized);
}

TEST_CASE("logistic connection has a rank one boundary map") {
    const auto G = logistic();
    const auto T = build_index_triple(everything(G), box(G, {0.75}, {1.5}), G);
    const auto les = les_of_triple(T, G, 1, homology::Ring::F2, 16);
    CHECK(les.exactness.exact);
    CHECK(les.ranks13 == std::vector<std::size_t>{0, 0});
    CHECK(les.ranks23 == std::vector<std::size_t>{1, 0});
    CHECK(les.ranks12 == std::vector<std::size_t>{0, 1});
    CHECK(les.boundary_ranks() == std::vector<std::size_t>{0, 1});
    CHECK(connecting_homomorphism(T, G, 1, homology::Ring::Q, 16).ranks() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("disconnected blocks have a trivial boundary map and are not uniformly connected") {
    const auto G = twowell();
    const auto NA = box(G, {1.6}, {2.4});
    const auto NR = box(G, {0.6}, {1.4});
    const auto N = NA.united_with(NR);
    const auto T = build_index_triple(N, NA, G);
    const auto les = les_of_triple(T, G, 1, homology::Ring::F2, 16);
    CHECK(les.exactness.exact);
    for (auto r : les.boundary_ranks()) CHECK(r == 0);

    const auto K = invariant_part(N, G);
    const auto uc = uniform_connectedness(K, NA, NR, 12, 23);
    CHECK_FALSE(uc.uniformly_connected);
    CHECK_FALSE(uc.degenerate);
    CHECK(uc.witness_slice == std::optional<std::size_t>{12});
    CHECK_THROWS_AS(connection_witness(K, invariant_part(NA, G), invariant_part(NR, G), NA, NR, G, 1, 23),
                    NoConnection);
}

TEST_CASE("logistic is uniformly connected with a witness path") {
    const auto G = logistic();
    const auto K = invariant_part(everything(G), G);
    const auto A = invariant_part(box(G, {0.75}, {1.5}), G);
    const auto R = invariant_part(box(G, {-0.3}, {0.3}), G);
    const auto UA = box(G, {0.9}, {1.3});
    const auto UR = box(G, {-0.25}, {0.1});
    const auto uc = uniform_connectedness(K, UA, UR, 12, 23);
    CHECK(uc.uniformly_connected);
    CHECK(uc.gap_cubes.size() == 12);
    for (const auto& s : uc.gap_cubes) {
        CHECK(K.contains(s.slice, s.cube));
        CHECK_FALSE(UA.contains(s.slice, s.cube));
        CHECK_FALSE(UR.contains(s.slice, s.cube));
    }
    const auto path = connection_witness(K, A, R, UA, UR, G, 1, 23);
    CHECK(path.front().slice == 1);
    CHECK(path.back().slice == 23);
    CHECK(R.contains(1, path.front().cube));
    CHECK(A.contains(23, path.back().cube));
    CHECK(is_path(path, G));
    bool gap = false;
    for (const auto& s : path) {
        CHECK(K.contains(s.slice, s.cube));
        gap = gap || (!UA.contains(s.slice, s.cube) && !UR.contains(s.slice, s.cube));
    }
    CHECK(gap);
}

TEST_CASE("uniform connectedness edge cases") {
    const auto G = logistic();
    const SlicedCubeSet empty(G.slice_count(), 40);
    const auto uc = uniform_connectedness(empty, box(G, {0.9}, {1.3}), box(G, {-0.25}, {0.1}), 3, 10);
    CHECK(uc.degenerate);
    CHECK_FALSE(uc.uniformly_connected);
    CHECK(uc.witness_slice == std::optional<std::size_t>{3});
    CHECK_THROWS_AS(uniform_connectedness(empty, box(G, {0.0}, {1.0}), box(G, {0.5}, {1.5}), 3, 10),
                    PreconditionError);
}

TEST_CASE("orbit detector finds paths inside the isolated sets") {
    const auto G = logistic();
    const auto PA = build_index_pair(box(G, {0.75}, {1.5}), G);
    const auto a = orbit_detector(PA, G, 12);
    REQUIRE(a);
    CHECK(a->back().slice == G.last_slice());
    CHECK(a->front().slice <= 12);
    CHECK(is_path(*a, G));
    for (const auto& s : *a) CHECK((PA.N1.contains(s.slice, s.cube) && !PA.N2.contains(s.slice, s.cube)));

    const auto PR = build_index_pair(box(G, {-0.3}, {0.3}), G);
    CHECK(orbit_detector(PR, G, 12));

    const auto T = graph_of("translation", {{"v", 1.0}}, Grid({0.0}, {1.0}, {8}), 0.25, 10);
    CHECK_FALSE(orbit_detector(build_index_pair(everything(T), T), T, 10));
}
