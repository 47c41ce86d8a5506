#pragma once

#include "conley/homology/homology.hpp"
#include "conley/pairs/index_pairs.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conley::index {

using homology::GradedHomology;
using homology::GradedMap;
using homology::Ring;
using pairs::IndexPair;
using pairs::SlicedCubeSet;
using pairs::TransitionGraph;

/// Telescope model of the pair over [a_k, a_l]: prisms [j, j+1] x Q for Q in
/// slice j or j+1, with time as the first axis. For k == l it is the slice pair.
struct BlockComplex {
    homology::CubicalSet N1;
    homology::CubicalSet N2;
    std::size_t k = 0;
    std::size_t l = 0;
};

GradedHomology slice_pair_homology(const IndexPair& P, const dynamics::Grid& grid, std::size_t k, Ring ring);

BlockComplex block_complex(const IndexPair& P, const dynamics::Grid& grid, std::size_t k, std::size_t l);

/// Map induced by embedding slice j as {j} x slice into the block.
GradedMap slice_inclusion_map(const GradedHomology& slice, std::size_t j, const BlockComplex& block,
                              const GradedHomology& block_homology);

/// g_{k,l} = f_l^{-1} o f_k through the block [k, l]. Throws
/// NonIsomorphicInclusion when the right inclusion is not invertible.
GradedMap transition_map(const IndexPair& P, const dynamics::Grid& grid, std::size_t k, std::size_t l, Ring ring);

struct Transition {
    std::size_t k = 0;
    std::size_t l = 0;
    std::optional<GradedMap> map;
    bool isomorphism = false;
    std::string failure;  // set when the right inclusion is not invertible
};

/// Slice homologies B_k and transitions g_{k,l} for first <= k <= l <= last.
struct SliceHomologySystem {
    Ring ring = Ring::F2;
    std::size_t first = 0;
    std::size_t last = 0;
    std::vector<GradedHomology> B;  // B[k - first]
    std::vector<Transition> transitions;

    const GradedHomology& at(std::size_t k) const { return B.at(k - first); }
    const Transition* find(std::size_t k, std::size_t l) const;
};

/// P is used as given (thicken before calling). Work is split across threads.
SliceHomologySystem slice_homology_system(const IndexPair& P, const dynamics::Grid& grid, std::size_t first,
                                          Ring ring);

struct ConleyIndexResult {
    std::size_t k0 = 0;
    std::vector<std::size_t> ranks;
    std::vector<std::pair<std::size_t, std::size_t>> witnesses;  // isomorphic g_{k,l}, k0 <= k < l
};

/// Smallest k0 >= first with every g_{k,l} (k0 <= k < l <= last) an
/// isomorphism. Throws NotStabilized when only k0 = last would qualify.
ConleyIndexResult direct_limit(const SliceHomologySystem& S);

struct DirectSystemLaws {
    bool identities = true;
    bool functorial = true;
    std::size_t checked = 0;
    std::vector<std::string> failures;
};

/// g_{k,k} = id and g_{k,m} = g_{l,m} o g_{k,l} wherever all three are defined.
DirectSystemLaws check_direct_system_laws(const SliceHomologySystem& S);

struct IndexOptions {
    std::uint32_t thickening = 1;
    Ring ring = Ring::F2;
    std::size_t burn_in = 0;
    std::size_t margin = pairs::kDefaultMargin;
};

struct IndexComputation {
    IndexPair pair;       // as built
    IndexPair thickened;  // exit set thickened by options.thickening
    SliceHomologySystem system;
    ConleyIndexResult result;
};

/// isolating_check -> build_index_pair -> thicken_exit -> slice system -> direct_limit.
/// Throws NotIsolating, IrregularConstruction, NotStabilized.
IndexComputation conley_index(const SlicedCubeSet& N, const TransitionGraph& G, const IndexOptions& options);

}  // namespace conley::index
