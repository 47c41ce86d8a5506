#pragma once

#include "conley/index/conley_index.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace conley::index {

struct PathStep {
    std::size_t slice = 0;
    dynamics::CubeId cube = 0;

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

using Path = std::vector<PathStep>;

struct LongExactSequenceData {
    std::size_t slice = 0;
    std::vector<std::size_t> ranks13;  // Hom(N1, N3)
    std::vector<std::size_t> ranks23;  // Hom(N2, N3)
    std::vector<std::size_t> ranks12;  // Hom(N1, N2)
    GradedMap i;                       // Hom(N2, N3) -> Hom(N1, N3)
    GradedMap p;                       // Hom(N1, N3) -> Hom(N1, N2)
    GradedMap d;                       // Hom_n(N1, N2) -> Hom_{n-1}(N2, N3)
    homology::ExactnessReport exactness;

    std::vector<std::size_t> boundary_ranks() const { return d.ranks(); }
};

/// Sequence of the thickened triple (N1, N2^{-m}, N3^{-m}) at one slice.
/// Throws InternalConsistencyError when it is not exact.
LongExactSequenceData les_of_triple(const pairs::IndexTriple& T, const TransitionGraph& G, std::uint32_t m, Ring ring,
                                    std::size_t slice);

GradedMap connecting_homomorphism(const pairs::IndexTriple& T, const TransitionGraph& G, std::uint32_t m, Ring ring,
                                  std::size_t slice);

/// Path through N1 \ N2 ending at the last slice with the earliest possible
/// start t0; returned when t0 <= latest_start. Starts at the smallest cube id
/// and follows the largest successor id that can still reach the last slice.
std::optional<Path> orbit_detector(const IndexPair& P, const TransitionGraph& G, std::size_t latest_start);

struct UniformConnectedness {
    bool uniformly_connected = false;
    bool degenerate = false;                // K empty on every tested slice
    std::optional<std::size_t> witness_slice;  // first slice with K inside U_A u U_R
    std::vector<PathStep> gap_cubes;        // one K cube outside U_A u U_R per tested slice
    std::size_t first = 0;
    std::size_t last = 0;
};

/// Tests K(k) inside U_A(k) u U_R(k) for first <= k <= last.
/// Throws PreconditionError when U_A and U_R overlap on some slice.
UniformConnectedness uniform_connectedness(const SlicedCubeSet& K, const SlicedCubeSet& U_A,
                                           const SlicedCubeSet& U_R, std::size_t first, std::size_t last);

/// Path in K from the R block at slice `first` to the A block at slice `last`
/// meeting at least one cube outside U_A u U_R. Throws NoConnection.
Path connection_witness(const SlicedCubeSet& K, const SlicedCubeSet& A, const SlicedCubeSet& R,
                        const SlicedCubeSet& U_A, const SlicedCubeSet& U_R, const TransitionGraph& G,
                        std::size_t first, std::size_t last);

}  // namespace conley::index
