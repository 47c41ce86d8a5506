#pragma once

#include "conley/homology/cube.hpp"
#include "conley/homology/matrix.hpp"
#include "conley/homology/ring.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace conley::homology {

/// Generator count above which chain complexes are rejected.
inline constexpr std::size_t kMaxGenerators = 1'000'000;
/// Side length above which dense integer matrices (Z coefficients) are rejected.
inline constexpr std::size_t kMaxDenseSide = 5'000;

struct ChainEntry {
    std::uint32_t generator = 0;
    Scalar coeff;

    friend bool operator==(const ChainEntry&, const ChainEntry&) = default;
};

/// Sparse chain, sorted by generator index, no zero coefficients.
using Chain = std::vector<ChainEntry>;

/// A pair of cubical sets (A, B) with B a subset of A.
struct CubicalPair {
    CubicalSet A;
    CubicalSet B;
};

/// Relative cubical chain complex C(A)/C(B). Generators of degree n are the
/// n-cubes of A not in B, in canonical order.
class ChainComplex {
public:
    using Column = std::vector<std::pair<std::uint32_t, int>>;

    /// Throws PreconditionError when B is not a subset of A, SizeLimitExceeded
    /// above kMaxGenerators.
    static ChainComplex relative(const CubicalSet& A, const CubicalSet& B);
    static ChainComplex absolute(const CubicalSet& A);

    std::size_t ambient_dimension() const noexcept { return ambient_; }
    /// Degrees run over 0..ambient_dimension().
    std::size_t degree_count() const noexcept { return ambient_ + 1; }
    const std::vector<ElementaryCube>& generators(std::size_t n) const { return generators_.at(n); }
    std::size_t generator_count() const noexcept;
    std::optional<std::uint32_t> index_of(const ElementaryCube& cube) const;

    /// Sparse boundary columns of D_n: each column lists (row in degree n-1, sign).
    const std::vector<Column>& boundary(std::size_t n) const { return boundary_.at(n); }
    IntMatrix dense_boundary(std::size_t n) const;

private:
    std::size_t ambient_ = 1;
    std::vector<std::vector<ElementaryCube>> generators_;
    std::vector<std::vector<Column>> boundary_;
};

namespace detail {
class ClassSolver;
}

struct HomologyDegree {
    std::size_t rank = 0;
    std::vector<std::int64_t> torsion;  // Z only; entries > 1
    std::vector<Chain> basis;           // cycles of the relative complex
};

/// Graded homology with a chosen basis of cycle representatives per degree.
class GradedHomology {
public:
    GradedHomology(Ring ring, std::shared_ptr<const ChainComplex> complex, std::vector<HomologyDegree> degrees,
                   std::shared_ptr<const detail::ClassSolver> solver);

    Ring ring() const noexcept { return ring_; }
    std::size_t degree_count() const noexcept { return degrees_.size(); }
    std::size_t rank(std::size_t n) const { return n < degrees_.size() ? degrees_[n].rank : 0; }
    std::vector<std::size_t> ranks() const;
    const std::vector<std::int64_t>& torsion(std::size_t n) const { return degrees_.at(n).torsion; }
    const std::vector<Chain>& basis(std::size_t n) const { return degrees_.at(n).basis; }
    const ChainComplex& complex() const noexcept { return *complex_; }
    bool is_zero() const;

    /// Coordinates of the class of a relative n-cycle in the chosen basis.
    /// Throws InternalConsistencyError when the chain is not a cycle and
    /// UnsupportedRing for Z.
    std::vector<Scalar> coordinates(std::size_t n, const Chain& cycle) const;

    /// Boundary D_n applied to a chain of this complex (in ring arithmetic).
    Chain boundary_of(std::size_t n, const Chain& chain) const;

private:
    Ring ring_;
    std::shared_ptr<const ChainComplex> complex_;
    std::vector<HomologyDegree> degrees_;
    std::shared_ptr<const detail::ClassSolver> solver_;
};

/// Per-degree matrices between homology bases. A map with shift s sends
/// degree n of the domain to degree n + s of the codomain.
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(Ring ring, int shift, std::vector<std::size_t> domain_ranks, std::vector<std::size_t> codomain_ranks);

    static GradedMap identity(Ring ring, std::vector<std::size_t> ranks);
    static GradedMap zero(Ring ring, int shift, std::vector<std::size_t> domain_ranks,
                          std::vector<std::size_t> codomain_ranks);

    Ring ring() const noexcept { return ring_; }
    int shift() const noexcept { return shift_; }
    const std::vector<std::size_t>& domain_ranks() const noexcept { return domain_ranks_; }
    const std::vector<std::size_t>& codomain_ranks() const noexcept { return codomain_ranks_; }
    std::size_t codomain_rank(long degree) const;

    /// Matrix for domain degree n: codomain_rank(n + shift) x domain_ranks[n].
    const Matrix& block(std::size_t n) const { return blocks_.at(n); }
    void set_block(std::size_t n, Matrix m);

    std::size_t rank(std::size_t n) const { return blocks_.at(n).rank(); }
    std::vector<std::size_t> ranks() const;
    bool is_zero() const;
    bool is_isomorphism() const;
    std::optional<GradedMap> inverse() const;

    friend bool operator==(const GradedMap&, const GradedMap&) = default;

private:
    Ring ring_ = Ring::F2;
    int shift_ = 0;
    std::vector<std::size_t> domain_ranks_;
    std::vector<std::size_t> codomain_ranks_;
    std::vector<Matrix> blocks_;
};

/// after o before. Throws PreconditionError on shape mismatch.
GradedMap compose(const GradedMap& after, const GradedMap& before);

/// Dense D_n of the absolute complex of a face-closed set.
IntMatrix boundary_matrix(const CubicalSet& set, std::size_t n);

/// Homology of C(A)/C(B); with B empty this is the unreduced homology of A.
GradedHomology relative_homology(const CubicalSet& A, const CubicalSet& B, Ring ring);
GradedHomology relative_homology(const CubicalPair& pair, Ring ring);

/// Cube-level chain map used by induced_map: returns the image cube, which must
/// be a generator or lie in the codomain's subspace B (then it maps to zero).
using CubeMap = std::function<ElementaryCube(const ElementaryCube&)>;

/// Map induced in homology by a cube-to-cube chain map (identity by default).
GradedMap induced_map(const GradedHomology& from, const GradedHomology& to, const CubeMap& chain_map = {});

/// Map induced by the inclusion small -> large. Throws PreconditionError when
/// the pairs are not nested and UnsupportedRing for Z.
GradedMap inclusion_induced_map(const CubicalPair& small, const CubicalPair& large, Ring ring);

/// Connecting map H_n(N1, N2) -> H_{n-1}(N2, N3) of a triple N3 c N2 c N1,
/// evaluated on precomputed homologies of the two pairs.
GradedMap snake_connecting(const GradedHomology& h12, const GradedHomology& h23);
GradedMap snake_connecting(const CubicalSet& N1, const CubicalSet& N2, const CubicalSet& N3, Ring ring);

struct ExactnessNode {
    std::size_t node = 0;  // index of the map entering the node (node sits after maps[node])
    long degree = 0;
    std::size_t image_rank = 0;
    std::size_t kernel_dim = 0;
    bool exact = true;
};

struct ExactnessReport {
    bool exact = true;
    std::vector<ExactnessNode> nodes;
};

/// Checks rank(image of incoming) == dim(kernel of outgoing) at each interior
/// node of a composable sequence, in every degree.
ExactnessReport exactness_check(std::span<const GradedMap> maps);

}  // namespace conley::homology
