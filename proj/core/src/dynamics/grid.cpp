#include "conley/dynamics/grid.hpp"

#include "conley/errors.hpp"

#include <cmath>
#include <limits>

namespace conley::dynamics {

Grid::Grid(std::vector<double> lower, std::vector<double> upper, std::vector<int> divisions)
    : lower_(std::move(lower)), upper_(std::move(upper)), divisions_(std::move(divisions)) {
    const std::size_t d = lower_.size();
    if (d == 0 || d >= homology::ElementaryCube::kMaxAmbient)
        throw PreconditionError("grid dimension must be in [1, " +
                                std::to_string(homology::ElementaryCube::kMaxAmbient - 1) + "]");
    if (upper_.size() != d || divisions_.size() != d)
        throw PreconditionError("grid lower, upper and divisions must have equal length");
    count_ = 1;
    for (std::size_t a = 0; a < d; ++a) {
        if (!std::isfinite(lower_[a]) || !std::isfinite(upper_[a]) || !(lower_[a] < upper_[a]))
            throw PreconditionError("grid axis " + std::to_string(a) + ": lower must be below upper");
        if (divisions_[a] < 1) throw PreconditionError("grid axis " + std::to_string(a) + ": divisions must be >= 1");
        size_.push_back((upper_[a] - lower_[a]) / divisions_[a]);
        count_ *= static_cast<std::size_t>(divisions_[a]);
        if (count_ > std::numeric_limits<CubeId>::max()) throw SizeLimitExceeded("grid has too many cells");
    }
}

double Grid::cell_lower(std::size_t axis, std::int64_t j) const {
    if (j >= divisions_[axis]) return upper_[axis];
    return lower_[axis] + static_cast<double>(j) * size_[axis];
}

std::vector<std::int32_t> Grid::coords(CubeId id) const {
    std::vector<std::int32_t> c(dimension());
    for (std::size_t a = dimension(); a-- > 0;) {
        c[a] = static_cast<std::int32_t>(id % static_cast<CubeId>(divisions_[a]));
        id /= static_cast<CubeId>(divisions_[a]);
    }
    return c;
}

CubeId Grid::id(std::span<const std::int32_t> coords) const {
    CubeId out = 0;
    for (std::size_t a = 0; a < dimension(); ++a) out = out * static_cast<CubeId>(divisions_[a]) + coords[a];
    return out;
}

homology::ElementaryCube Grid::cube(CubeId id) const { return homology::ElementaryCube::full(coords(id)); }

std::pair<std::vector<double>, std::vector<double>> Grid::box_of(CubeId id) const {
    const auto c = coords(id);
    std::vector<double> lo(dimension()), hi(dimension());
    for (std::size_t a = 0; a < dimension(); ++a) {
        lo[a] = cell_lower(a, c[a]);
        hi[a] = cell_lower(a, c[a] + 1);
    }
    return {lo, hi};
}

bool Grid::contains_point(std::span<const double> x) const {
    for (std::size_t a = 0; a < dimension(); ++a)
        if (!(x[a] >= lower_[a] && x[a] <= upper_[a])) return false;
    return true;
}

std::pair<std::int32_t, std::int32_t> Grid::covering_range(std::size_t axis, double lo, double hi) const {
    const std::int32_t n = divisions_[axis];
    auto guess = [&](double v) {
        const double g = std::floor((v - lower_[axis]) / size_[axis]);
        return static_cast<std::int32_t>(std::clamp(g, 0.0, static_cast<double>(n - 1)));
    };
    // Cell containing lo; on a grid line take the upper cell.
    std::int32_t first = guess(lo);
    while (first > 0 && cell_lower(axis, first) > lo) --first;
    while (first < n - 1 && cell_lower(axis, first + 1) <= lo) ++first;
    // Cell containing hi; on a grid line take the lower cell.
    std::int32_t last = guess(hi);
    while (last > 0 && cell_lower(axis, last) >= hi) --last;
    while (last < n - 1 && cell_lower(axis, last + 1) < hi) ++last;
    if (first > last) std::swap(first, last);
    return {first, last};
}

std::vector<CubeId> Grid::cells_in_box(std::span<const double> lo, std::span<const double> hi) const {
    const std::size_t d = dimension();
    std::vector<std::pair<std::int32_t, std::int32_t>> ranges(d);
    for (std::size_t a = 0; a < d; ++a) {
        const double tol = 1e-9 * size_[a];
        std::int32_t first = divisions_[a], last = -1;
        for (std::int32_t j = 0; j < divisions_[a]; ++j) {
            if (cell_lower(a, j) < hi[a] - tol && cell_lower(a, j + 1) > lo[a] + tol) {
                first = std::min(first, j);
                last = j;
            }
        }
        if (last < first) return {};
        ranges[a] = {first, last};
    }
    std::vector<CubeId> out;
    std::vector<std::int32_t> c(d);
    for (std::size_t a = 0; a < d; ++a) c[a] = ranges[a].first;
    for (;;) {
        out.push_back(id(c));
        std::size_t a = d;
        while (a-- > 0) {
            if (++c[a] <= ranges[a].second) break;
            c[a] = ranges[a].first;
            if (a == 0) return out;
        }
    }
}

}  // namespace conley::dynamics
