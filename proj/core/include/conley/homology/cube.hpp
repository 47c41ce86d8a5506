#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace conley::homology {

/// Elementary interval: [lower, lower+1] or the degenerate point [lower, lower].
struct Interval {
    std::int32_t lower = 0;
    bool degenerate = true;

    friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Product of elementary intervals. Storage is inline; ambient dimension is
/// bounded by kMaxAmbient (spatial dimension plus one time axis).
class ElementaryCube {
public:
    static constexpr std::size_t kMaxAmbient = 8;

    ElementaryCube() = default;
    explicit ElementaryCube(std::span<const Interval> intervals);
    ElementaryCube(std::initializer_list<Interval> intervals);

    /// Full-dimensional unit cube with the given lower corner.
    static ElementaryCube full(std::span<const std::int32_t> lower);
    /// Vertex at the given coordinates.
    static ElementaryCube vertex(std::span<const std::int32_t> coords);

    std::size_t ambient_dimension() const noexcept { return size_; }
    std::size_t dimension() const noexcept;
    const Interval& operator[](std::size_t i) const noexcept { return intervals_[i]; }
    std::span<const Interval> intervals() const noexcept { return {intervals_.data(), size_}; }

    /// Prepend an interval (used to lift spatial cubes into time prisms).
    ElementaryCube prepend(Interval first) const;

    friend bool operator==(const ElementaryCube& a, const ElementaryCube& b) noexcept;
    friend std::strong_ordering operator<=>(const ElementaryCube& a, const ElementaryCube& b) noexcept;

private:
    std::array<Interval, kMaxAmbient> intervals_{};
    std::size_t size_ = 0;
};

/// Primary faces with their boundary signs: for the j-th non-degenerate slot
/// (counted from 0) the upper face carries (-1)^j and the lower face -(-1)^j.
std::vector<std::pair<int, ElementaryCube>> faces(const ElementaryCube& cube);

/// Finite face-closed set of elementary cubes of one ambient dimension, kept in
/// canonical (lexicographic) order.
class CubicalSet {
public:
    explicit CubicalSet(std::size_t ambient_dimension = 1);

    /// Closure under faces of the given cubes.
    static CubicalSet closure_of(std::size_t ambient_dimension, std::span<const ElementaryCube> cubes);
    /// Build from cubes assumed face-closed; throws PreconditionError when not.
    static CubicalSet from_closed(std::size_t ambient_dimension, std::vector<ElementaryCube> cubes);

    std::size_t ambient_dimension() const noexcept { return ambient_; }
    std::size_t size() const noexcept { return cubes_.size(); }
    bool empty() const noexcept { return cubes_.empty(); }
    const std::vector<ElementaryCube>& cubes() const noexcept { return cubes_; }

    bool contains(const ElementaryCube& cube) const;
    bool is_subset_of(const CubicalSet& other) const;
    bool is_face_closed() const;

    /// Cubes of one dimension, canonical order.
    std::vector<ElementaryCube> cubes_of_dimension(std::size_t dim) const;
    /// Maximal dimension present, or -1 when empty.
    int top_dimension() const noexcept;

    CubicalSet united_with(const CubicalSet& other) const;

private:
    std::size_t ambient_;
    std::vector<ElementaryCube> cubes_;
};

}  // namespace conley::homology
