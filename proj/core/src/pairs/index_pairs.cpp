#include "conley/pairs/index_pairs.hpp"

#include "conley/errors.hpp"

#include <algorithm>
#include <deque>

namespace conley::pairs {

namespace {

void check_graph(const SlicedCubeSet& s, const TransitionGraph& G, const char* what) {
    if (s.slice_count() != G.slice_count() || s.cube_count() != G.grid().cube_count())
        throw PreconditionError(std::string(what) + " does not match the transition graph");
}

std::string kind_name(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::Nesting: return "N2 not contained in N1";
        case Violation::Kind::ExitNotInExitSet: return "cube leaves N1 but is not in N2";
        case Violation::Kind::ExitSetNotForwardClosed: return "cube of N2 has a successor in N1 \\ N2";
    }
    return "?";
}

}  // namespace

std::string Violation::describe() const {
    return kind_name(kind) + " at slice " + std::to_string(slice) + ", cube " + std::to_string(cube);
}

SlicedCubeSet invariant_part(const SlicedCubeSet& N, const TransitionGraph& G, std::size_t margin) {
    check_graph(N, G, "N");
    const std::size_t K = G.last_slice();
    const std::size_t cubes = N.cube_count();

    SlicedCubeSet fwd(N.slice_count(), cubes);
    for (auto q : N.slice(0)) fwd.insert(0, q);
    for (std::size_t k = 0; k < K; ++k) {
        for (auto q : fwd.slice(k))
            for (auto c : G.image(k, q))
                if (N.contains(k + 1, c)) fwd.insert(k + 1, c);
    }

    SlicedCubeSet bwd(N.slice_count(), cubes);
    for (auto q : N.slice(K)) bwd.insert(K, q);
    for (std::size_t k = K; k-- > 0;) {
        for (auto q : N.slice(k)) {
            for (auto c : G.image(k, q)) {
                if (bwd.contains(k + 1, c)) {
                    bwd.insert(k, q);
                    break;
                }
            }
        }
    }

    auto inv = fwd.intersected_with(bwd);
    for (std::size_t k = 0; k <= K; ++k)
        if (k < margin || k + margin > K) inv.clear_slice(k);
    return inv;
}

SlicedCubeSet forward_hull(const SlicedCubeSet& seed, const SlicedCubeSet& within, const TransitionGraph& G) {
    check_graph(seed, G, "seed");
    check_graph(within, G, "region");
    const std::size_t K = G.last_slice();
    SlicedCubeSet hull = seed;
    for (std::size_t k = 0; k < K; ++k) {
        for (auto q : hull.slice(k))
            for (auto c : G.image(k, q))
                if (within.contains(k + 1, c)) hull.insert(k + 1, c);
    }
    auto pending = hull.slice(K);
    std::deque<CubeId> queue(pending.begin(), pending.end());
    while (!queue.empty()) {
        const auto q = queue.front();
        queue.pop_front();
        for (auto c : G.image(K, q))
            if (within.contains(K, c) && hull.insert(K, c)) queue.push_back(c);
    }
    return hull;
}

IsolationReport isolating_check(const SlicedCubeSet& N, const TransitionGraph& G, std::size_t margin) {
    const auto inv = invariant_part(N, G, margin);
    const auto& grid = G.grid();
    const std::size_t d = grid.dimension();
    IsolationReport report;
    for (std::size_t k = 0; k < inv.slice_count(); ++k) {
        for (auto q : inv.slice(k)) {
            const auto base = grid.coords(q);
            bool interior = true;
            std::vector<int> offset(d, -1);
            for (bool more = true; more && interior;) {
                bool zero = true;
                auto c = base;
                for (std::size_t a = 0; a < d; ++a) {
                    c[a] += offset[a];
                    zero = zero && offset[a] == 0;
                    if (c[a] < 0 || c[a] >= grid.divisions()[a]) interior = false;
                }
                if (interior && !zero && !N.contains(k, grid.id(c))) interior = false;
                more = false;
                for (std::size_t a = d; a-- > 0;) {
                    if (++offset[a] <= 1) {
                        more = true;
                        break;
                    }
                    offset[a] = -1;
                }
            }
            if (!interior) {
                report.isolating = false;
                report.touching.emplace_back(k, q);
            }
        }
    }
    return report;
}

PairVerification verify_index_pair(const IndexPair& P, const TransitionGraph& G) {
    check_graph(P.N1, G, "N1");
    check_graph(P.N2, G, "N2");
    PairVerification out;
    auto fail = [&](Violation::Kind kind, std::size_t k, CubeId q) {
        out.ok = false;
        out.violations.push_back({kind, k, q});
    };
    for (std::size_t k = 0; k < P.N1.slice_count(); ++k) {
        const std::size_t next = G.successor_slice(k);
        for (auto q : P.N2.slice(k))
            if (!P.N1.contains(k, q)) fail(Violation::Kind::Nesting, k, q);
        for (auto q : P.N1.slice(k)) {
            bool leaves = G.escaped(k, q);
            for (auto c : G.image(k, q)) leaves = leaves || !P.N1.contains(next, c);
            if (leaves && !P.N2.contains(k, q)) fail(Violation::Kind::ExitNotInExitSet, k, q);
            if (P.N2.contains(k, q)) {
                for (auto c : G.image(k, q)) {
                    if (P.N1.contains(next, c) && !P.N2.contains(next, c)) {
                        fail(Violation::Kind::ExitSetNotForwardClosed, k, q);
                        break;
                    }
                }
            }
        }
    }
    return out;
}

namespace {

void require_valid(const IndexPair& P, const TransitionGraph& G, const std::string& what) {
    const auto v = verify_index_pair(P, G);
    if (!v.ok) {
        const auto& first = v.violations.front();
        throw IrregularConstruction(what + ": " + kind_name(first.kind), first.slice, first.cube);
    }
}

}  // namespace

IndexPair build_index_pair(const SlicedCubeSet& N, const TransitionGraph& G, std::size_t margin) {
    const auto inv = invariant_part(N, G, margin);
    IndexPair P{SlicedCubeSet(N.slice_count(), N.cube_count()), SlicedCubeSet(N.slice_count(), N.cube_count())};
    if (inv.empty()) return P;
    P.N1 = forward_hull(inv, N, G);
    SlicedCubeSet exit(N.slice_count(), N.cube_count());
    for (std::size_t k = 0; k < N.slice_count(); ++k) {
        const std::size_t next = G.successor_slice(k);
        for (auto q : P.N1.slice(k)) {
            bool leaves = G.escaped(k, q);
            for (auto c : G.image(k, q)) leaves = leaves || !P.N1.contains(next, c);
            if (leaves) exit.insert(k, q);
        }
    }
    P.N2 = forward_hull(exit, P.N1, G);
    require_valid(P, G, "index pair construction");
    return P;
}

ExitTimeField discrete_exit_time(const IndexPair& P, const TransitionGraph& G) {
    check_graph(P.N1, G, "N1");
    check_graph(P.N2, G, "N2");
    constexpr auto inf = ExitTimeField::kInfinite;
    const std::size_t K = G.last_slice();
    ExitTimeField f;
    f.values.assign(K + 1, std::vector<std::uint32_t>(P.N1.cube_count(), inf));

    // Last slice maps into itself: breadth-first search on reversed edges.
    {
        std::vector<std::vector<CubeId>> rev(P.N1.cube_count());
        for (auto q : P.N1.slice(K))
            for (auto c : G.image(K, q))
                if (P.N1.contains(K, c)) rev[c].push_back(q);
        std::deque<CubeId> queue;
        for (auto q : P.N2.slice(K)) {
            if (!P.N1.contains(K, q)) continue;
            f.values[K][q] = 0;
            queue.push_back(q);
        }
        while (!queue.empty()) {
            const auto c = queue.front();
            queue.pop_front();
            for (auto q : rev[c]) {
                if (f.values[K][q] == inf) {
                    f.values[K][q] = f.values[K][c] + 1;
                    queue.push_back(q);
                }
            }
        }
    }
    for (std::size_t k = K; k-- > 0;) {
        for (auto q : P.N1.slice(k)) {
            if (P.N2.contains(k, q)) {
                f.values[k][q] = 0;
                continue;
            }
            std::uint32_t best = inf;
            for (auto c : G.image(k, q))
                if (P.N1.contains(k + 1, c)) best = std::min(best, f.values[k + 1][c]);
            f.values[k][q] = best == inf ? inf : best + 1;
        }
    }
    return f;
}

IndexPair thicken_exit(const IndexPair& P, const TransitionGraph& G, std::uint32_t m) {
    const auto times = discrete_exit_time(P, G);
    SlicedCubeSet seed(P.N1.slice_count(), P.N1.cube_count());
    for (std::size_t k = 0; k < P.N1.slice_count(); ++k)
        for (auto q : P.N1.slice(k))
            if (times.at(k, q) <= m) seed.insert(k, q);
    IndexPair out{P.N1, forward_hull(seed, P.N1, G)};
    require_valid(out, G, "exit thickening");
    return out;
}

namespace {

// A path in inv that starts in region, leaves it and comes back.
bool has_returning_path(const SlicedCubeSet& inv, const SlicedCubeSet& region, const TransitionGraph& G) {
    const std::size_t cubes = inv.cube_count();
    const std::size_t slices = inv.slice_count();
    std::vector<std::vector<char>> seen(slices, std::vector<char>(cubes, 0));  // bit 0: inside, bit 1: left
    std::deque<std::tuple<std::size_t, CubeId, bool>> queue;
    for (std::size_t k = 0; k < slices; ++k)
        for (auto q : inv.slice(k))
            if (region.contains(k, q)) {
                seen[k][q] |= 1;
                queue.emplace_back(k, q, false);
            }
    while (!queue.empty()) {
        const auto [k, q, left] = queue.front();
        queue.pop_front();
        const std::size_t next = G.successor_slice(k);
        for (auto c : G.image(k, q)) {
            if (!inv.contains(next, c)) continue;
            const bool inside = region.contains(next, c);
            if (left && inside) return true;
            const bool now_left = left || !inside;
            const char bit = now_left ? 2 : 1;
            if (seen[next][c] & bit) continue;
            seen[next][c] |= bit;
            queue.emplace_back(next, c, now_left);
        }
    }
    return false;
}

}  // namespace

IndexTriple build_index_triple(const SlicedCubeSet& N, const SlicedCubeSet& N_A, const TransitionGraph& G,
                               std::size_t margin) {
    check_graph(N, G, "N");
    check_graph(N_A, G, "N_A");
    if (!N_A.is_subset_of(N)) throw PreconditionError("N_A must be contained in N");
    const auto inv_a = invariant_part(N_A, G, margin);
    if (inv_a.empty()) throw PreconditionError("N_A has an empty invariant part");
    const auto inv = invariant_part(N, G, margin);
    if (has_returning_path(inv, N_A, G))
        throw PreconditionError("N_A does not isolate an attractor: a path leaves it inside Inv(N) and returns");

    const auto outer = build_index_pair(N, G, margin);
    const auto inner = build_index_pair(N_A, G, margin);
    IndexTriple T{outer.N1, outer.N2.united_with(forward_hull(inner.N1, outer.N1, G)), outer.N2};
    require_valid({T.N1, T.N3}, G, "index triple (N1, N3)");
    require_valid({T.N2, T.N3}, G, "index triple (N2, N3)");
    return T;
}

IndexTriple thicken_triple(const IndexTriple& T, const TransitionGraph& G, std::uint32_t m) {
    const auto p2 = thicken_exit({T.N1, T.N2}, G, m);
    const auto p3 = thicken_exit({T.N1, T.N3}, G, m);
    return {T.N1, p2.N2, p3.N2};
}

ArVerdict verify_ar_decomposition(const SlicedCubeSet& K, const SlicedCubeSet& A, const SlicedCubeSet& R,
                                  const TransitionGraph& G) {
    check_graph(K, G, "K");
    check_graph(A, G, "A");
    check_graph(R, G, "R");
    if (!A.is_subset_of(K) || !R.is_subset_of(K)) throw PreconditionError("A and R must be subsets of K");
    if (!A.intersected_with(R).empty()) throw PreconditionError("A and R must be disjoint");

    constexpr std::size_t kMaxMessages = 20;
    ArVerdict v;
    auto report = [&](const std::string& msg) {
        v.ok = false;
        if (v.violations.size() < kMaxMessages) v.violations.push_back(msg);
    };
    for (std::size_t k = 0; k < K.slice_count(); ++k) {
        const std::size_t next = G.successor_slice(k);
        for (auto q : K.slice(k)) {
            for (auto c : G.image(k, q)) {
                if (!K.contains(next, c)) continue;
                const std::string where = " (slice " + std::to_string(k) + ", cube " + std::to_string(q) +
                                          " -> cube " + std::to_string(c) + ")";
                if (A.contains(k, q) && R.contains(next, c))
                    report("path from A to R" + where);
                else if (A.contains(k, q) && !A.contains(next, c))
                    report("path leaves A inside K" + where);
                else if (!R.contains(k, q) && R.contains(next, c))
                    report("path enters R from outside" + where);
            }
        }
    }
    return v;
}

}  // namespace conley::pairs
