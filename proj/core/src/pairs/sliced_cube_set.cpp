#include "conley/pairs/sliced_cube_set.hpp"

#include "conley/errors.hpp"

namespace conley::pairs {

SlicedCubeSet::SlicedCubeSet(std::size_t slice_count, std::size_t cube_count)
    : cubes_(cube_count), bits_(slice_count, std::vector<bool>(cube_count, false)) {}

SlicedCubeSet SlicedCubeSet::constant(std::size_t slice_count, std::size_t cube_count,
                                      const std::vector<CubeId>& cubes) {
    SlicedCubeSet s(slice_count, cube_count);
    for (std::size_t k = 0; k < slice_count; ++k)
        for (auto q : cubes) s.insert(k, q);
    return s;
}

bool SlicedCubeSet::insert(std::size_t k, CubeId q) {
    if (q >= cubes_) throw PreconditionError("cube id outside the grid");
    auto ref = bits_.at(k)[q];
    if (ref) return false;
    ref = true;
    return true;
}

void SlicedCubeSet::erase(std::size_t k, CubeId q) { bits_.at(k).at(q) = false; }

void SlicedCubeSet::clear_slice(std::size_t k) { bits_.at(k).assign(cubes_, false); }

std::vector<CubeId> SlicedCubeSet::slice(std::size_t k) const {
    std::vector<CubeId> out;
    const auto& b = bits_.at(k);
    for (std::size_t q = 0; q < cubes_; ++q)
        if (b[q]) out.push_back(static_cast<CubeId>(q));
    return out;
}

std::size_t SlicedCubeSet::slice_size(std::size_t k) const {
    std::size_t n = 0;
    for (bool b : bits_.at(k)) n += b;
    return n;
}

std::size_t SlicedCubeSet::size() const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < bits_.size(); ++k) n += slice_size(k);
    return n;
}

void SlicedCubeSet::check_shape(const SlicedCubeSet& other) const {
    if (other.cubes_ != cubes_ || other.bits_.size() != bits_.size())
        throw PreconditionError("sliced cube sets have different shapes");
}

SlicedCubeSet SlicedCubeSet::united_with(const SlicedCubeSet& other) const {
    check_shape(other);
    SlicedCubeSet out = *this;
    for (std::size_t k = 0; k < bits_.size(); ++k)
        for (std::size_t q = 0; q < cubes_; ++q)
            if (other.bits_[k][q]) out.bits_[k][q] = true;
    return out;
}

SlicedCubeSet SlicedCubeSet::intersected_with(const SlicedCubeSet& other) const {
    check_shape(other);
    SlicedCubeSet out = *this;
    for (std::size_t k = 0; k < bits_.size(); ++k)
        for (std::size_t q = 0; q < cubes_; ++q)
            if (!other.bits_[k][q]) out.bits_[k][q] = false;
    return out;
}

SlicedCubeSet SlicedCubeSet::minus(const SlicedCubeSet& other) const {
    check_shape(other);
    SlicedCubeSet out = *this;
    for (std::size_t k = 0; k < bits_.size(); ++k)
        for (std::size_t q = 0; q < cubes_; ++q)
            if (other.bits_[k][q]) out.bits_[k][q] = false;
    return out;
}

bool SlicedCubeSet::is_subset_of(const SlicedCubeSet& other) const {
    check_shape(other);
    for (std::size_t k = 0; k < bits_.size(); ++k)
        for (std::size_t q = 0; q < cubes_; ++q)
            if (bits_[k][q] && !other.bits_[k][q]) return false;
    return true;
}

homology::CubicalSet SlicedCubeSet::closure(std::size_t k, const dynamics::Grid& grid) const {
    if (grid.cube_count() != cubes_) throw PreconditionError("grid does not match the sliced cube set");
    std::vector<homology::ElementaryCube> tops;
    for (auto q : slice(k)) tops.push_back(grid.cube(q));
    return homology::CubicalSet::closure_of(grid.dimension(), tops);
}

}  // namespace conley::pairs
