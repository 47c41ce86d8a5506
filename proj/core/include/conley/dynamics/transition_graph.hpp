#pragma once

#include "conley/dynamics/grid.hpp"
#include "conley/dynamics/vector_field.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace conley::dynamics {

/// Multivalued map of one slice: per cube, sorted image cubes or escaped.
struct SliceMap {
    std::vector<std::vector<CubeId>> images;
    std::vector<bool> escaped;

    friend bool operator==(const SliceMap&, const SliceMap&) = default;
};

struct TimeSlicing {
    double tau = 0.1;
    std::size_t last_slice = 10;  // K; slices are 0..K with a_k = k * tau
    int rk4_steps = 8;
};

/// Outer approximation of the time-tau map starting at a_k = k * tau: corners
/// and centre of every cell are integrated, their bounding box is covered by
/// cells and inflated by `padding` cells per axis.
SliceMap outer_approximation(const VectorField& field, const Grid& grid, std::size_t k, double tau, int padding,
                             int rk4_steps = 8);

/// Slice-indexed combinatorial semiflow F_0..F_K. F_k sends slice k to slice
/// k+1; F_K is the map of the last interval and is read back into slice K.
class TransitionGraph {
public:
    TransitionGraph() = default;
    TransitionGraph(Grid grid, double tau, std::vector<SliceMap> maps);

    static TransitionGraph build(const VectorField& field, const Grid& grid, const TimeSlicing& slicing,
                                 int padding);

    const Grid& grid() const noexcept { return grid_; }
    double tau() const noexcept { return tau_; }
    std::size_t last_slice() const noexcept { return maps_.size() - 1; }
    std::size_t slice_count() const noexcept { return maps_.size(); }
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * tau_; }
    std::size_t successor_slice(std::size_t k) const noexcept { return k < last_slice() ? k + 1 : k; }

    std::span<const CubeId> image(std::size_t k, CubeId id) const { return maps_.at(k).images.at(id); }
    bool escaped(std::size_t k, CubeId id) const { return maps_.at(k).escaped.at(id); }
    const SliceMap& slice_map(std::size_t k) const { return maps_.at(k); }

    friend bool operator==(const TransitionGraph&, const TransitionGraph&) = default;

private:
    Grid grid_;
    double tau_ = 0.0;
    std::vector<SliceMap> maps_;
};

}  // namespace conley::dynamics
