#pragma once

#include "conley/dynamics/grid.hpp"
#include "conley/homology/cube.hpp"

#include <cstddef>
#include <vector>

namespace conley::pairs {

using dynamics::CubeId;

/// Per-slice family of full-dimensional grid cubes, slices 0..K.
class SlicedCubeSet {
public:
    SlicedCubeSet() = default;
    SlicedCubeSet(std::size_t slice_count, std::size_t cube_count);

    /// The same cubes in every slice.
    static SlicedCubeSet constant(std::size_t slice_count, std::size_t cube_count, const std::vector<CubeId>& cubes);

    std::size_t slice_count() const noexcept { return bits_.size(); }
    std::size_t cube_count() const noexcept { return cubes_; }

    bool contains(std::size_t k, CubeId q) const { return bits_[k][q]; }
    /// Returns true when the cube was not present before.
    bool insert(std::size_t k, CubeId q);
    void erase(std::size_t k, CubeId q);
    void clear_slice(std::size_t k);

    std::vector<CubeId> slice(std::size_t k) const;
    std::size_t slice_size(std::size_t k) const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }

    SlicedCubeSet united_with(const SlicedCubeSet& other) const;
    SlicedCubeSet intersected_with(const SlicedCubeSet& other) const;
    SlicedCubeSet minus(const SlicedCubeSet& other) const;
    bool is_subset_of(const SlicedCubeSet& other) const;

    /// Face closure of one slice as a cubical set in the grid's index space.
    homology::CubicalSet closure(std::size_t k, const dynamics::Grid& grid) const;

    friend bool operator==(const SlicedCubeSet&, const SlicedCubeSet&) = default;

private:
    void check_shape(const SlicedCubeSet& other) const;

    std::size_t cubes_ = 0;
    std::vector<std::vector<bool>> bits_;
};

}  // namespace conley::pairs
