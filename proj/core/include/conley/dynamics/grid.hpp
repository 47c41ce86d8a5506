#pragma once

#include "conley/homology/cube.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace conley::dynamics {

using CubeId = std::uint32_t;

/// Uniform box grid. Cells are numbered row-major with axis 0 slowest, so
/// increasing ids follow the canonical cube order.
class Grid {
public:
    Grid() = default;
    /// Throws PreconditionError on empty axes, lower >= upper or divisions < 1.
    Grid(std::vector<double> lower, std::vector<double> upper, std::vector<int> divisions);

    std::size_t dimension() const noexcept { return lower_.size(); }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    const std::vector<int>& divisions() const noexcept { return divisions_; }
    double cell_size(std::size_t axis) const { return size_.at(axis); }
    std::size_t cube_count() const noexcept { return count_; }

    /// Lower edge of cell j along an axis (j may equal divisions for the upper edge).
    double cell_lower(std::size_t axis, std::int64_t j) const;

    std::vector<std::int32_t> coords(CubeId id) const;
    CubeId id(std::span<const std::int32_t> coords) const;
    homology::ElementaryCube cube(CubeId id) const;
    /// Real-space corners of a cell.
    std::pair<std::vector<double>, std::vector<double>> box_of(CubeId id) const;

    bool contains_point(std::span<const double> x) const;

    /// Cells whose interior meets the interior of [lo, hi], sorted by id.
    std::vector<CubeId> cells_in_box(std::span<const double> lo, std::span<const double> hi) const;

    /// Index range of cells covering [lo, hi] along one axis; both ends inside [lower, upper].
    std::pair<std::int32_t, std::int32_t> covering_range(std::size_t axis, double lo, double hi) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<int> divisions_;
    std::vector<double> size_;
    std::size_t count_ = 0;
};

}  // namespace conley::dynamics
