#include "conley/homology/cube.hpp"

#include "conley/errors.hpp"

#include <algorithm>
#include <string>

namespace conley::homology {

namespace {

void check_ambient(std::size_t n) {
    if (n == 0 || n > ElementaryCube::kMaxAmbient) {
        throw PreconditionError("elementary cube ambient dimension must be in [1, " +
                                std::to_string(ElementaryCube::kMaxAmbient) + "], got " +
                                std::to_string(n));
    }
}

}  // namespace

ElementaryCube::ElementaryCube(std::span<const Interval> intervals) : size_(intervals.size()) {
    check_ambient(size_);
    std::copy(intervals.begin(), intervals.end(), intervals_.begin());
}

ElementaryCube::ElementaryCube(std::initializer_list<Interval> intervals)
    : ElementaryCube(std::span<const Interval>(intervals.begin(), intervals.size())) {}

ElementaryCube ElementaryCube::full(std::span<const std::int32_t> lower) {
    ElementaryCube c;
    c.size_ = lower.size();
    check_ambient(c.size_);
    for (std::size_t i = 0; i < lower.size(); ++i) c.intervals_[i] = {lower[i], false};
    return c;
}

ElementaryCube ElementaryCube::vertex(std::span<const std::int32_t> coords) {
    ElementaryCube c;
    c.size_ = coords.size();
    check_ambient(c.size_);
    for (std::size_t i = 0; i < coords.size(); ++i) c.intervals_[i] = {coords[i], true};
    return c;
}

std::size_t ElementaryCube::dimension() const noexcept {
    std::size_t d = 0;
    for (std::size_t i = 0; i < size_; ++i) d += intervals_[i].degenerate ? 0 : 1;
    return d;
}

ElementaryCube ElementaryCube::prepend(Interval first) const {
    ElementaryCube c;
    c.size_ = size_ + 1;
    check_ambient(c.size_);
    c.intervals_[0] = first;
    std::copy(intervals_.begin(), intervals_.begin() + static_cast<std::ptrdiff_t>(size_),
              c.intervals_.begin() + 1);
    return c;
}

bool operator==(const ElementaryCube& a, const ElementaryCube& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.intervals_.begin(),
                                            a.intervals_.begin() + static_cast<std::ptrdiff_t>(a.size_),
                                            b.intervals_.begin());
}

std::strong_ordering operator<=>(const ElementaryCube& a, const ElementaryCube& b) noexcept {
    const std::size_t n = std::min(a.size_, b.size_);
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.intervals_[i] <=> b.intervals_[i]; c != 0) return c;
    }
    return a.size_ <=> b.size_;
}

std::vector<std::pair<int, ElementaryCube>> faces(const ElementaryCube& cube) {
    std::vector<std::pair<int, ElementaryCube>> out;
    out.reserve(2 * cube.dimension());
    int sign = 1;
    std::array<Interval, ElementaryCube::kMaxAmbient> buf{};
    const auto iv = cube.intervals();
    std::copy(iv.begin(), iv.end(), buf.begin());
    const std::span<const Interval> view(buf.data(), iv.size());
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (iv[i].degenerate) continue;
        buf[i] = {iv[i].lower + 1, true};
        out.emplace_back(sign, ElementaryCube(view));
        buf[i] = {iv[i].lower, true};
        out.emplace_back(-sign, ElementaryCube(view));
        buf[i] = iv[i];
        sign = -sign;
    }
    return out;
}

CubicalSet::CubicalSet(std::size_t ambient_dimension) : ambient_(ambient_dimension) {
    check_ambient(ambient_dimension);
}

CubicalSet CubicalSet::closure_of(std::size_t ambient_dimension, std::span<const ElementaryCube> cubes) {
    CubicalSet out(ambient_dimension);
    std::vector<ElementaryCube> frontier(cubes.begin(), cubes.end());
    for (const auto& c : frontier) {
        if (c.ambient_dimension() != ambient_dimension)
            throw PreconditionError("cube ambient dimension does not match the cubical set");
    }
    std::vector<ElementaryCube> all;
    // Faces of a cube have strictly lower dimension, so processing by
    // decreasing dimension visits each level once.
    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        all.insert(all.end(), frontier.begin(), frontier.end());
        std::vector<ElementaryCube> next;
        for (const auto& c : frontier) {
            for (auto& [s, f] : faces(c)) next.push_back(f);
        }
        frontier = std::move(next);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    out.cubes_ = std::move(all);
    return out;
}

CubicalSet CubicalSet::from_closed(std::size_t ambient_dimension, std::vector<ElementaryCube> cubes) {
    CubicalSet out(ambient_dimension);
    for (const auto& c : cubes) {
        if (c.ambient_dimension() != ambient_dimension)
            throw PreconditionError("cube ambient dimension does not match the cubical set");
    }
    std::sort(cubes.begin(), cubes.end());
    cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
    out.cubes_ = std::move(cubes);
    if (!out.is_face_closed()) throw PreconditionError("cubical set is not closed under faces");
    return out;
}

bool CubicalSet::contains(const ElementaryCube& cube) const {
    return std::binary_search(cubes_.begin(), cubes_.end(), cube);
}

bool CubicalSet::is_subset_of(const CubicalSet& other) const {
    if (ambient_ != other.ambient_) return empty();
    return std::includes(other.cubes_.begin(), other.cubes_.end(), cubes_.begin(), cubes_.end());
}

bool CubicalSet::is_face_closed() const {
    for (const auto& c : cubes_) {
        for (const auto& [s, f] : faces(c)) {
            if (!contains(f)) return false;
        }
    }
    return true;
}

std::vector<ElementaryCube> CubicalSet::cubes_of_dimension(std::size_t dim) const {
    std::vector<ElementaryCube> out;
    for (const auto& c : cubes_) {
        if (c.dimension() == dim) out.push_back(c);
    }
    return out;
}

int CubicalSet::top_dimension() const noexcept {
    int top = -1;
    for (const auto& c : cubes_) top = std::max(top, static_cast<int>(c.dimension()));
    return top;
}

CubicalSet CubicalSet::united_with(const CubicalSet& other) const {
    if (other.ambient_ != ambient_) throw PreconditionError("union of cubical sets of different ambient dimension");
    CubicalSet out(ambient_);
    std::set_union(cubes_.begin(), cubes_.end(), other.cubes_.begin(), other.cubes_.end(),
                   std::back_inserter(out.cubes_));
    return out;
}

}  // namespace conley::homology
