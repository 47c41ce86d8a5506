#pragma once

#include "conley/dynamics/transition_graph.hpp"
#include "conley/pairs/sliced_cube_set.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace conley::pairs {

using dynamics::TransitionGraph;

/// Default number of slices dropped at each end of the window by invariant_part.
inline constexpr std::size_t kDefaultMargin = 1;

struct IndexPair {
    SlicedCubeSet N1;
    SlicedCubeSet N2;
};

struct IndexTriple {
    SlicedCubeSet N1;
    SlicedCubeSet N2;
    SlicedCubeSet N3;
};

struct Violation {
    enum class Kind { Nesting, ExitNotInExitSet, ExitSetNotForwardClosed };

    Kind kind;
    std::size_t slice;
    CubeId cube;

    std::string describe() const;
};

struct PairVerification {
    bool ok = true;
    std::vector<Violation> violations;
};

/// Exit time in steps through N1 into N2; kInfinite when N2 is unreachable.
struct ExitTimeField {
    static constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();

    std::vector<std::vector<std::uint32_t>> values;  // [slice][cube]; cubes outside N1 are kInfinite

    std::uint32_t at(std::size_t k, CubeId q) const { return values[k][q]; }
};

/// Cubes on a path inside N running from slice 0 to slice K. Only slices in
/// [margin, K - margin] are kept; the remaining slices are empty.
SlicedCubeSet invariant_part(const SlicedCubeSet& N, const TransitionGraph& G, std::size_t margin = kDefaultMargin);

/// Smallest superset of `seed` inside `within` closed under the graph.
SlicedCubeSet forward_hull(const SlicedCubeSet& seed, const SlicedCubeSet& within, const TransitionGraph& G);

struct IsolationReport {
    bool isolating = true;
    std::vector<std::pair<std::size_t, CubeId>> touching;  // invariant cubes on the boundary of N
};

/// The invariant part avoids every cube of N that has a grid neighbour
/// (including diagonal ones) outside N or outside the grid.
IsolationReport isolating_check(const SlicedCubeSet& N, const TransitionGraph& G,
                                std::size_t margin = kDefaultMargin);

/// One-step checks: nesting, every cube of N1 with a successor outside N1 (or
/// escaping) lies in N2, and no successor of an N2 cube lies in N1 \ N2.
PairVerification verify_index_pair(const IndexPair& P, const TransitionGraph& G);

/// N1 = forward hull of the invariant part in N, E = cubes of N1 leaving N1,
/// N2 = forward hull of E in N1. Empty invariant part gives the empty pair.
/// Throws IrregularConstruction when verification fails.
IndexPair build_index_pair(const SlicedCubeSet& N, const TransitionGraph& G, std::size_t margin = kDefaultMargin);

ExitTimeField discrete_exit_time(const IndexPair& P, const TransitionGraph& G);

/// (N1, N2^{-m}): cubes with exit time <= m, closed forward inside N1.
IndexPair thicken_exit(const IndexPair& P, const TransitionGraph& G, std::uint32_t m);

/// (N1, N3) from N, (M1, M2) from N_A and N2 = N3 u (forward hull of M1 in N1).
/// Throws PreconditionError when N_A is not inside N, has empty invariant part
/// or a path leaves N_A inside the invariant part of N and comes back; throws
/// IrregularConstruction when a constituent pair fails verification.
IndexTriple build_index_triple(const SlicedCubeSet& N, const SlicedCubeSet& N_A, const TransitionGraph& G,
                               std::size_t margin = kDefaultMargin);

/// (N1, N2^{-m}, N3^{-m}) with both exit sets thickened inside N1.
IndexTriple thicken_triple(const IndexTriple& T, const TransitionGraph& G, std::uint32_t m);

struct ArVerdict {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Inside K: A is forward invariant and no path enters R from outside R.
/// Every path in K then runs R -> (K \ (A u R)) -> A or stays in one block.
/// Throws PreconditionError unless A, R are disjoint subsets of K.
ArVerdict verify_ar_decomposition(const SlicedCubeSet& K, const SlicedCubeSet& A, const SlicedCubeSet& R,
                                  const TransitionGraph& G);

}  // namespace conley::pairs
