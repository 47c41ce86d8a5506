#include "conley/dynamics/transition_graph.hpp"

#include "conley/errors.hpp"
#include "conley/parallel.hpp"

#include <algorithm>

namespace conley::dynamics {

SliceMap outer_approximation(const VectorField& field, const Grid& grid, std::size_t k, double tau, int padding,
                             int rk4_steps) {
    if (padding < 0) throw PreconditionError("padding must be nonnegative");
    if (!(tau > 0.0)) throw PreconditionError("tau must be positive");
    if (field.dimension() != grid.dimension())
        throw PreconditionError("vector field and grid have different dimensions");

    const std::size_t d = grid.dimension();
    const double t0 = static_cast<double>(k) * tau;
    SliceMap out;
    out.images.resize(grid.cube_count());
    out.escaped.assign(grid.cube_count(), false);

    std::vector<double> x(d), lo(d), hi(d);
    std::vector<std::pair<std::int32_t, std::int32_t>> ranges(d);
    for (CubeId id = 0; id < grid.cube_count(); ++id) {
        const auto [clo, chi] = grid.box_of(id);
        bool escaped = false;
        std::fill(lo.begin(), lo.end(), 0.0);
        std::fill(hi.begin(), hi.end(), 0.0);
        const std::size_t corners = std::size_t{1} << d;
        for (std::size_t s = 0; s <= corners && !escaped; ++s) {
            for (std::size_t a = 0; a < d; ++a) {
                if (s == corners)
                    x[a] = 0.5 * (clo[a] + chi[a]);
                else
                    x[a] = (s >> a) & 1U ? chi[a] : clo[a];
            }
            const auto r = rk4_integrate(field, t0, x, tau, rk4_steps);
            if (r.escaped || !grid.contains_point(r.state)) {
                escaped = true;
                break;
            }
            for (std::size_t a = 0; a < d; ++a) {
                if (s == 0 || r.state[a] < lo[a]) lo[a] = r.state[a];
                if (s == 0 || r.state[a] > hi[a]) hi[a] = r.state[a];
            }
        }
        if (escaped) {
            out.escaped[id] = true;
            continue;
        }
        for (std::size_t a = 0; a < d; ++a) {
            auto [first, last] = grid.covering_range(a, lo[a], hi[a]);
            first = std::max(0, first - padding);
            last = std::min(grid.divisions()[a] - 1, last + padding);
            ranges[a] = {first, last};
        }
        auto& img = out.images[id];
        std::vector<std::int32_t> c(d);
        for (std::size_t a = 0; a < d; ++a) c[a] = ranges[a].first;
        for (bool more = true; more;) {
            img.push_back(grid.id(c));
            more = false;
            for (std::size_t a = d; a-- > 0;) {
                if (++c[a] <= ranges[a].second) {
                    more = true;
                    break;
                }
                c[a] = ranges[a].first;
            }
        }
    }
    return out;
}

TransitionGraph::TransitionGraph(Grid grid, double tau, std::vector<SliceMap> maps)
    : grid_(std::move(grid)), tau_(tau), maps_(std::move(maps)) {
    if (maps_.empty()) throw PreconditionError("transition graph needs at least one slice");
    for (const auto& m : maps_) {
        if (m.images.size() != grid_.cube_count() || m.escaped.size() != grid_.cube_count())
            throw PreconditionError("slice map size does not match the grid");
        for (const auto& img : m.images) {
            if (!std::is_sorted(img.begin(), img.end()))
                throw PreconditionError("slice map images must be sorted");
            for (auto c : img)
                if (c >= grid_.cube_count()) throw PreconditionError("slice map image outside the grid");
        }
    }
}

TransitionGraph TransitionGraph::build(const VectorField& field, const Grid& grid, const TimeSlicing& slicing,
                                       int padding) {
    std::vector<SliceMap> maps(slicing.last_slice + 1);
    parallel_for(maps.size(), [&](std::size_t k) {
        maps[k] = outer_approximation(field, grid, k, slicing.tau, padding, slicing.rk4_steps);
    });
    return TransitionGraph(grid, slicing.tau, std::move(maps));
}

}  // namespace conley::dynamics
