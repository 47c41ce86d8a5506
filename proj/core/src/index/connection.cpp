#include "conley/index/connection.hpp"

#include "conley/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace conley::index {

using dynamics::CubeId;

LongExactSequenceData les_of_triple(const pairs::IndexTriple& T, const TransitionGraph& G, std::uint32_t m, Ring ring,
                                    std::size_t slice) {
    if (ring == Ring::Z) throw UnsupportedRing("the connecting homomorphism needs field coefficients (F2 or Q)");
    if (slice >= G.slice_count()) throw PreconditionError("slice out of range");
    const auto thick = pairs::thicken_triple(T, G, m);
    const auto& grid = G.grid();
    const auto c1 = thick.N1.closure(slice, grid);
    const auto c2 = thick.N2.closure(slice, grid);
    const auto c3 = thick.N3.closure(slice, grid);

    const auto h13 = homology::relative_homology(c1, c3, ring);
    const auto h23 = homology::relative_homology(c2, c3, ring);
    const auto h12 = homology::relative_homology(c1, c2, ring);

    LongExactSequenceData out;
    out.slice = slice;
    out.ranks13 = h13.ranks();
    out.ranks23 = h23.ranks();
    out.ranks12 = h12.ranks();
    out.i = homology::induced_map(h23, h13);
    out.p = homology::induced_map(h13, h12);
    out.d = homology::snake_connecting(h12, h23);
    const std::vector<GradedMap> seq{out.i, out.p, out.d, out.i};
    out.exactness = homology::exactness_check(seq);
    if (!out.exactness.exact)
        throw InternalConsistencyError("long exact sequence of the triple is not exact at slice " +
                                       std::to_string(slice));
    return out;
}

GradedMap connecting_homomorphism(const pairs::IndexTriple& T, const TransitionGraph& G, std::uint32_t m, Ring ring,
                                  std::size_t slice) {
    return les_of_triple(T, G, m, ring, slice).d;
}

std::optional<Path> orbit_detector(const IndexPair& P, const TransitionGraph& G, std::size_t latest_start) {
    const auto S = P.N1.minus(P.N2);
    const std::size_t K = G.last_slice();
    const std::size_t n = G.grid().cube_count();
    std::vector<std::vector<bool>> reach(K + 1, std::vector<bool>(n, false));
    for (auto q : S.slice(K)) reach[K][q] = true;
    for (std::size_t k = K; k-- > 0;)
        for (auto q : S.slice(k))
            for (auto r : G.image(k, q))
                if (reach[k + 1][r]) {
                    reach[k][q] = true;
                    break;
                }

    std::size_t t0 = 0;
    while (t0 <= K && std::find(reach[t0].begin(), reach[t0].end(), true) == reach[t0].end()) ++t0;
    if (t0 > K || t0 > latest_start) return std::nullopt;

    Path path;
    CubeId q = static_cast<CubeId>(std::find(reach[t0].begin(), reach[t0].end(), true) - reach[t0].begin());
    path.push_back({t0, q});
    for (std::size_t k = t0; k < K; ++k) {
        const auto img = G.image(k, q);
        auto it = std::find_if(img.rbegin(), img.rend(), [&](CubeId r) { return reach[k + 1][r]; });
        q = *it;
        path.push_back({k + 1, q});
    }
    return path;
}

namespace {

void check_shapes(const SlicedCubeSet& a, const SlicedCubeSet& b) {
    if (a.slice_count() != b.slice_count() || a.cube_count() != b.cube_count())
        throw PreconditionError("sliced cube sets have different shapes");
}

}  // namespace

UniformConnectedness uniform_connectedness(const SlicedCubeSet& K, const SlicedCubeSet& U_A,
                                           const SlicedCubeSet& U_R, std::size_t first, std::size_t last) {
    check_shapes(K, U_A);
    check_shapes(K, U_R);
    if (first > last || last >= K.slice_count()) throw PreconditionError("invalid slice range");
    UniformConnectedness out;
    out.first = first;
    out.last = last;
    bool all_empty = true;
    for (std::size_t k = first; k <= last; ++k) {
        for (auto q : U_A.slice(k))
            if (U_R.contains(k, q))
                throw PreconditionError("U_A and U_R overlap at slice " + std::to_string(k));
        std::optional<CubeId> gap;
        for (auto q : K.slice(k)) {
            all_empty = false;
            if (!U_A.contains(k, q) && !U_R.contains(k, q)) {
                gap = q;
                break;
            }
        }
        if (!gap) {
            if (!out.witness_slice) out.witness_slice = k;
        } else {
            out.gap_cubes.push_back({k, *gap});
        }
    }
    out.degenerate = all_empty;
    out.uniformly_connected = !out.witness_slice;
    if (out.witness_slice) out.gap_cubes.clear();
    return out;
}

Path connection_witness(const SlicedCubeSet& K, const SlicedCubeSet& A, const SlicedCubeSet& R,
                        const SlicedCubeSet& U_A, const SlicedCubeSet& U_R, const TransitionGraph& G,
                        std::size_t first, std::size_t last) {
    for (const auto* s : {&A, &R, &U_A, &U_R}) check_shapes(K, *s);
    if (first > last || last >= K.slice_count()) throw PreconditionError("invalid slice range");

    using State = std::tuple<std::size_t, CubeId, bool>;
    std::map<State, State> parent;
    std::deque<State> queue;
    auto outside = [&](std::size_t k, CubeId q) { return !U_A.contains(k, q) && !U_R.contains(k, q); };
    for (auto q : R.slice(first)) {
        if (!K.contains(first, q)) continue;
        State s{first, q, outside(first, q)};
        if (parent.emplace(s, s).second) queue.push_back(s);
    }
    while (!queue.empty()) {
        const State s = queue.front();
        queue.pop_front();
        const auto [k, q, gap] = s;
        if (k == last && gap && A.contains(k, q)) {
            Path path;
            for (State cur = s;; cur = parent.at(cur)) {
                path.push_back({std::get<0>(cur), std::get<1>(cur)});
                if (parent.at(cur) == cur) break;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        if (k == last) continue;
        for (auto r : G.image(k, q)) {
            if (!K.contains(k + 1, r)) continue;
            State next{k + 1, r, gap || outside(k + 1, r)};
            if (parent.emplace(next, s).second) queue.push_back(next);
        }
    }
    throw NoConnection("no path in K runs from R at slice " + std::to_string(first) + " to A at slice " +
                       std::to_string(last) + " through a cube outside U_A u U_R");
}

}  // namespace conley::index
