#include "conley/index/conley_index.hpp"

#include "conley/errors.hpp"
#include "conley/parallel.hpp"

#include <algorithm>

namespace conley::index {

using homology::CubicalSet;
using homology::ElementaryCube;
using homology::Interval;

GradedHomology slice_pair_homology(const IndexPair& P, const dynamics::Grid& grid, std::size_t k, Ring ring) {
    return homology::relative_homology(P.N1.closure(k, grid), P.N2.closure(k, grid), ring);
}

namespace {

CubicalSet telescope(const SlicedCubeSet& S, const dynamics::Grid& grid, std::size_t k, std::size_t l) {
    std::vector<ElementaryCube> prisms;
    for (std::size_t j = k; j < l; ++j) {
        const Interval span{static_cast<std::int32_t>(j), false};
        auto here = S.slice(j);
        const auto next = S.slice(j + 1);
        std::vector<dynamics::CubeId> both;
        std::set_union(here.begin(), here.end(), next.begin(), next.end(), std::back_inserter(both));
        for (auto q : both) prisms.push_back(grid.cube(q).prepend(span));
    }
    return CubicalSet::closure_of(grid.dimension() + 1, prisms);
}

std::pair<std::size_t, std::size_t> first_singular_block(const GradedMap& m) {
    for (std::size_t n = 0; n < m.domain_ranks().size(); ++n) {
        const auto& b = m.block(n);
        if (b.rows() != b.cols() || b.rank() != b.rows())
            return {n, std::max(b.rows(), b.cols()) - b.rank()};
    }
    for (std::size_t n = m.domain_ranks().size(); n < m.codomain_ranks().size(); ++n)
        if (m.codomain_ranks()[n] != 0) return {n, m.codomain_ranks()[n]};
    return {0, 0};
}

}  // namespace

BlockComplex block_complex(const IndexPair& P, const dynamics::Grid& grid, std::size_t k, std::size_t l) {
    if (k > l) throw PreconditionError("block_complex needs k <= l");
    if (l >= P.N1.slice_count()) throw PreconditionError("block_complex: slice out of range");
    if (k == l) return {P.N1.closure(k, grid), P.N2.closure(k, grid), k, l};
    return {telescope(P.N1, grid, k, l), telescope(P.N2, grid, k, l), k, l};
}

GradedMap slice_inclusion_map(const GradedHomology& slice, std::size_t j, const BlockComplex& block,
                              const GradedHomology& block_homology) {
    if (j < block.k || j > block.l) throw PreconditionError("slice is outside the block");
    if (block.k == block.l) return homology::induced_map(slice, block_homology);
    const Interval at{static_cast<std::int32_t>(j), true};
    return homology::induced_map(slice, block_homology, [at](const ElementaryCube& c) { return c.prepend(at); });
}

namespace {

GradedMap transition_from(const GradedHomology& hk, const GradedHomology& hl, std::size_t k, std::size_t l,
                          const IndexPair& P, const dynamics::Grid& grid, Ring ring) {
    const auto block = block_complex(P, grid, k, l);
    const auto hb = homology::relative_homology(block.N1, block.N2, ring);
    const auto fl = slice_inclusion_map(hl, l, block, hb);
    const auto inv = fl.inverse();
    if (!inv) {
        const auto [degree, defect] = first_singular_block(fl);
        throw NonIsomorphicInclusion(degree, defect,
                                     "slice " + std::to_string(l) + " into block [" + std::to_string(k) + ", " +
                                         std::to_string(l) + "]");
    }
    return homology::compose(*inv, slice_inclusion_map(hk, k, block, hb));
}

}  // namespace

GradedMap transition_map(const IndexPair& P, const dynamics::Grid& grid, std::size_t k, std::size_t l, Ring ring) {
    if (ring == Ring::Z) throw UnsupportedRing("transition maps need field coefficients (F2 or Q)");
    return transition_from(slice_pair_homology(P, grid, k, ring), slice_pair_homology(P, grid, l, ring), k, l, P,
                           grid, ring);
}

const Transition* SliceHomologySystem::find(std::size_t k, std::size_t l) const {
    for (const auto& t : transitions)
        if (t.k == k && t.l == l) return &t;
    return nullptr;
}

SliceHomologySystem slice_homology_system(const IndexPair& P, const dynamics::Grid& grid, std::size_t first,
                                          Ring ring) {
    if (ring == Ring::Z) throw UnsupportedRing("transition maps need field coefficients (F2 or Q)");
    const std::size_t last = P.N1.slice_count() - 1;
    if (first > last) throw PreconditionError("first slice beyond the window");

    SliceHomologySystem S;
    S.ring = ring;
    S.first = first;
    S.last = last;
    std::vector<std::optional<GradedHomology>> slices(last - first + 1);
    parallel_for(slices.size(), [&](std::size_t i) { slices[i] = slice_pair_homology(P, grid, first + i, ring); });
    for (auto& h : slices) S.B.push_back(std::move(*h));

    for (std::size_t k = first; k <= last; ++k)
        for (std::size_t l = k; l <= last; ++l) S.transitions.push_back({k, l, std::nullopt, false, {}});
    parallel_for(S.transitions.size(), [&](std::size_t i) {
        auto& t = S.transitions[i];
        try {
            t.map = transition_from(S.at(t.k), S.at(t.l), t.k, t.l, P, grid, ring);
            t.isomorphism = t.map->is_isomorphism();
        } catch (const NonIsomorphicInclusion& e) {
            t.failure = e.what();
        }
    });
    return S;
}

ConleyIndexResult direct_limit(const SliceHomologySystem& S) {
    std::optional<std::size_t> bad;
    for (const auto& t : S.transitions) {
        if (t.k == t.l) continue;
        if (!t.map || !t.isomorphism) bad = std::max(bad.value_or(0), t.k);
    }
    ConleyIndexResult r;
    r.k0 = bad ? *bad + 1 : S.first;
    if (r.k0 >= S.last)
        throw NotStabilized("transition maps are not isomorphisms up to slice " + std::to_string(S.last) +
                            "; refine the grid, shrink tau or increase the thickening");
    r.ranks = S.at(r.k0).ranks();
    for (const auto& t : S.transitions)
        if (t.k >= r.k0 && t.k < t.l) r.witnesses.emplace_back(t.k, t.l);
    return r;
}

DirectSystemLaws check_direct_system_laws(const SliceHomologySystem& S) {
    DirectSystemLaws laws;
    for (std::size_t k = S.first; k <= S.last; ++k) {
        const auto* t = S.find(k, k);
        ++laws.checked;
        if (!t || !t->map || !(*t->map == GradedMap::identity(S.ring, S.at(k).ranks()))) {
            laws.identities = false;
            laws.failures.push_back("g(" + std::to_string(k) + "," + std::to_string(k) + ") is not the identity");
        }
    }
    for (std::size_t k = S.first; k <= S.last; ++k)
        for (std::size_t l = k + 1; l <= S.last; ++l)
            for (std::size_t m = l + 1; m <= S.last; ++m) {
                const auto* kl = S.find(k, l);
                const auto* lm = S.find(l, m);
                const auto* km = S.find(k, m);
                if (!kl->map || !lm->map || !km->map) continue;
                ++laws.checked;
                if (!(homology::compose(*lm->map, *kl->map) == *km->map)) {
                    laws.functorial = false;
                    laws.failures.push_back("g(" + std::to_string(k) + "," + std::to_string(m) + ") != g(" +
                                            std::to_string(l) + "," + std::to_string(m) + ") o g(" +
                                            std::to_string(k) + "," + std::to_string(l) + ")");
                }
            }
    return laws;
}

IndexComputation conley_index(const SlicedCubeSet& N, const TransitionGraph& G, const IndexOptions& options) {
    const auto iso = pairs::isolating_check(N, G, options.margin);
    if (!iso.isolating) {
        const auto [k, q] = iso.touching.front();
        throw NotIsolating("invariant part touches the boundary of N at slice " + std::to_string(k) + ", cube " +
                           std::to_string(q));
    }
    IndexComputation out;
    out.pair = pairs::build_index_pair(N, G, options.margin);
    out.thickened = pairs::thicken_exit(out.pair, G, options.thickening);
    out.system = slice_homology_system(out.thickened, G.grid(), options.burn_in, options.ring);
    out.result = direct_limit(out.system);
    return out;
}

}  // namespace conley::index
