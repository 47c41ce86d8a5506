#include "conley/homology/homology.hpp"

#include "conley/errors.hpp"
#include "conley/homology/smith.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace conley::homology {

// ---------------------------------------------------------------------------
// Chain complexes

std::size_t ChainComplex::generator_count() const noexcept {
    std::size_t total = 0;
    for (const auto& g : generators_) total += g.size();
    return total;
}

std::optional<std::uint32_t> ChainComplex::index_of(const ElementaryCube& cube) const {
    if (cube.ambient_dimension() != ambient_) return std::nullopt;
    const auto& gens = generators_[cube.dimension()];
    auto it = std::lower_bound(gens.begin(), gens.end(), cube);
    if (it == gens.end() || !(*it == cube)) return std::nullopt;
    return static_cast<std::uint32_t>(it - gens.begin());
}

ChainComplex ChainComplex::relative(const CubicalSet& A, const CubicalSet& B) {
    if (!B.empty() && B.ambient_dimension() != A.ambient_dimension())
        throw PreconditionError("relative complex: A and B have different ambient dimensions");
    if (!B.is_subset_of(A)) throw PreconditionError("relative complex: B is not a subset of A");
    if (A.size() > kMaxGenerators)
        throw SizeLimitExceeded("chain complex with " + std::to_string(A.size()) + " generators exceeds the limit of " +
                                std::to_string(kMaxGenerators));

    ChainComplex cc;
    cc.ambient_ = A.ambient_dimension();
    cc.generators_.assign(cc.ambient_ + 1, {});
    for (const auto& c : A.cubes()) {
        if (!B.contains(c)) cc.generators_[c.dimension()].push_back(c);
    }
    cc.boundary_.assign(cc.ambient_ + 1, {});
    for (std::size_t n = 1; n <= cc.ambient_; ++n) {
        auto& cols = cc.boundary_[n];
        cols.reserve(cc.generators_[n].size());
        for (const auto& g : cc.generators_[n]) {
            Column col;
            for (const auto& [sign, f] : faces(g)) {
                if (auto idx = cc.index_of(f)) col.emplace_back(*idx, sign);
            }
            std::sort(col.begin(), col.end());
            cols.push_back(std::move(col));
        }
    }
    return cc;
}

ChainComplex ChainComplex::absolute(const CubicalSet& A) { return relative(A, CubicalSet(A.ambient_dimension())); }

IntMatrix ChainComplex::dense_boundary(std::size_t n) const {
    const std::size_t cols = n < generators_.size() ? generators_[n].size() : 0;
    const std::size_t rows = (n >= 1 && n - 1 < generators_.size()) ? generators_[n - 1].size() : 0;
    if (rows > kMaxDenseSide || cols > kMaxDenseSide)
        throw SizeLimitExceeded("dense boundary matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " exceeds the dense limit");
    IntMatrix m(rows, cols);
    if (n == 0 || n >= generators_.size()) return m;
    for (std::size_t j = 0; j < cols; ++j) {
        for (const auto& [r, s] : boundary_[n][j]) m(r, j) += s;
    }
    return m;
}

IntMatrix boundary_matrix(const CubicalSet& set, std::size_t n) {
    return ChainComplex::absolute(set).dense_boundary(n);
}

// ---------------------------------------------------------------------------
// Field reduction

namespace detail {

class ClassSolver {
public:
    virtual ~ClassSolver() = default;
    virtual std::vector<Scalar> coordinates(std::size_t n, const Chain& cycle) const = 0;
};

}  // namespace detail

namespace {

struct F2Field {
    using value = std::uint8_t;
    static value add(value a, value b) { return a ^ b; }
    static value sub(value a, value b) { return a ^ b; }
    static value mul(value a, value b) { return a & b; }
    static value div(value a, value) { return a; }
    static bool is_zero(value a) { return a == 0; }
    static value from_sign(int s) { return static_cast<value>(s & 1); }
    static value from_scalar(const Scalar& s) { return normalize(Ring::F2, s) == 0 ? 0 : 1; }
    static Scalar to_scalar(value v) { return Scalar(v); }
};

struct QField {
    using value = Scalar;
    static value add(const value& a, const value& b) { return a + b; }
    static value sub(const value& a, const value& b) { return a - b; }
    static value mul(const value& a, const value& b) { return a * b; }
    static value div(const value& a, const value& b) { return a / b; }
    static bool is_zero(const value& a) { return a == 0; }
    static value from_sign(int s) { return Scalar(s); }
    static value from_scalar(const Scalar& s) { return s; }
    static Scalar to_scalar(const value& v) { return v; }
};

template <class F>
using Vec = std::vector<std::pair<std::uint32_t, typename F::value>>;

// y -= c * x
template <class F>
void sub_scaled(Vec<F>& y, const typename F::value& c, const Vec<F>& x) {
    Vec<F> out;
    out.reserve(y.size() + x.size());
    auto a = y.begin();
    auto b = x.begin();
    while (a != y.end() || b != x.end()) {
        if (b == x.end() || (a != y.end() && a->first < b->first)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == y.end() || b->first < a->first) {
            auto v = F::sub(typename F::value{}, F::mul(c, b->second));
            if (!F::is_zero(v)) out.emplace_back(b->first, std::move(v));
            ++b;
        } else {
            auto v = F::sub(a->second, F::mul(c, b->second));
            if (!F::is_zero(v)) out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    y = std::move(out);
}

template <class F>
class FieldReduction final : public detail::ClassSolver {
public:
    explicit FieldReduction(const ChainComplex& cc) : ambient_(cc.ambient_dimension()) {
        const std::size_t degrees = cc.degree_count();
        pivot_of_row_.assign(degrees + 1, {});
        reduced_.assign(degrees + 1, {});
        cycles_.assign(degrees, {});
        is_cycle_.assign(degrees, {});

        for (std::size_t n = 0; n < degrees; ++n) {
            const std::size_t count = cc.generators(n).size();
            is_cycle_[n].assign(count, false);
            cycles_[n].assign(count, {});
            if (n == 0) {
                for (std::uint32_t i = 0; i < count; ++i) {
                    is_cycle_[0][i] = true;
                    cycles_[0][i] = {{i, typename F::value(1)}};
                }
                continue;
            }
            reduce_degree(cc, n);
        }

        // Essential generators of degree n: cycles not killed by a boundary.
        essential_pos_.assign(degrees, {});
        essential_.assign(degrees, {});
        for (std::size_t n = 0; n < degrees; ++n) {
            const std::size_t count = cc.generators(n).size();
            essential_pos_[n].assign(count, -1);
            for (std::uint32_t i = 0; i < count; ++i) {
                const bool killed = n + 1 < degrees && pivot_of_row_[n + 1][i] >= 0;
                if (is_cycle_[n][i] && !killed) {
                    essential_pos_[n][i] = static_cast<std::int64_t>(essential_[n].size());
                    essential_[n].push_back(i);
                }
            }
        }
    }

    std::vector<Chain> basis(std::size_t n) const {
        std::vector<Chain> out;
        for (auto i : essential_[n]) out.push_back(to_chain(cycles_[n][i]));
        return out;
    }

    std::size_t rank(std::size_t n) const { return essential_[n].size(); }

    std::vector<Scalar> coordinates(std::size_t n, const Chain& cycle) const override {
        if (n >= essential_.size()) {
            if (!cycle.empty()) throw InternalConsistencyError("chain in a degree outside the complex");
            return {};
        }
        std::vector<Scalar> coords(essential_[n].size(), Scalar(0));
        Vec<F> z;
        z.reserve(cycle.size());
        for (const auto& e : cycle) {
            auto v = F::from_scalar(e.coeff);
            if (!F::is_zero(v)) z.emplace_back(e.generator, std::move(v));
        }
        const bool has_next = n + 1 < essential_.size();
        while (!z.empty()) {
            const std::uint32_t p = z.back().first;
            if (has_next && pivot_of_row_[n + 1][p] >= 0) {
                const auto& col = reduced_[n + 1][static_cast<std::size_t>(pivot_of_row_[n + 1][p])];
                const auto c = F::div(z.back().second, col.back().second);
                sub_scaled<F>(z, c, col);
            } else if (essential_pos_[n][p] >= 0) {
                const auto c = z.back().second;
                coords[static_cast<std::size_t>(essential_pos_[n][p])] = F::to_scalar(c);
                sub_scaled<F>(z, c, cycles_[n][p]);
            } else {
                throw InternalConsistencyError("chain is not a relative cycle in degree " + std::to_string(n));
            }
        }
        return coords;
    }

private:
    void reduce_degree(const ChainComplex& cc, std::size_t n) {
        const auto& cols = cc.boundary(n);
        const std::size_t rows = cc.generators(n - 1).size();
        pivot_of_row_[n].assign(rows, -1);
        reduced_[n].assign(cols.size(), {});
        std::vector<Vec<F>> v(cols.size());
        for (std::uint32_t j = 0; j < cols.size(); ++j) {
            Vec<F> r;
            r.reserve(cols[j].size());
            for (const auto& [row, sign] : cols[j]) {
                auto val = F::from_sign(sign);
                if (!F::is_zero(val)) r.emplace_back(row, std::move(val));
            }
            v[j] = {{j, typename F::value(1)}};
            while (!r.empty()) {
                const auto piv = pivot_of_row_[n][r.back().first];
                if (piv < 0) break;
                const auto& pc = reduced_[n][static_cast<std::size_t>(piv)];
                const auto c = F::div(r.back().second, pc.back().second);
                sub_scaled<F>(r, c, pc);
                sub_scaled<F>(v[j], c, v[static_cast<std::size_t>(piv)]);
            }
            if (r.empty()) {
                is_cycle_[n][j] = true;
                cycles_[n][j] = v[j];
            } else {
                pivot_of_row_[n][r.back().first] = static_cast<std::int64_t>(j);
                reduced_[n][j] = std::move(r);
            }
        }
    }

    static Chain to_chain(const Vec<F>& v) {
        Chain c;
        c.reserve(v.size());
        for (const auto& [i, x] : v) c.push_back({i, F::to_scalar(x)});
        return c;
    }

    std::size_t ambient_;
    // pivot_of_row_[n][r]: column of D_n whose reduced lowest row is r, or -1.
    std::vector<std::vector<std::int64_t>> pivot_of_row_;
    std::vector<std::vector<Vec<F>>> reduced_;
    std::vector<std::vector<Vec<F>>> cycles_;
    std::vector<std::vector<bool>> is_cycle_;
    std::vector<std::vector<std::int64_t>> essential_pos_;
    std::vector<std::vector<std::uint32_t>> essential_;
};

class IntegerSolver final : public detail::ClassSolver {
public:
    std::vector<Scalar> coordinates(std::size_t, const Chain&) const override {
        throw UnsupportedRing("class coordinates over Z are not supported; use F2 or Q");
    }
};

// Scale a rational chain to a primitive integer chain.
Chain primitive_integer(const Chain& c) {
    using boost::multiprecision::cpp_int;
    cpp_int l = 1;
    for (const auto& e : c) {
        const cpp_int d = boost::multiprecision::denominator(e.coeff);
        l = l / boost::multiprecision::gcd(l, d) * d;
    }
    cpp_int g = 0;
    for (const auto& e : c) g = boost::multiprecision::gcd(g, cpp_int(boost::multiprecision::numerator(Scalar(e.coeff * l))));
    if (g == 0) g = 1;
    Chain out;
    for (const auto& e : c) out.push_back({e.generator, Scalar(e.coeff * l / g)});
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Graded homology

GradedHomology::GradedHomology(Ring ring, std::shared_ptr<const ChainComplex> complex,
                               std::vector<HomologyDegree> degrees,
                               std::shared_ptr<const detail::ClassSolver> solver)
    : ring_(ring), complex_(std::move(complex)), degrees_(std::move(degrees)), solver_(std::move(solver)) {}

std::vector<std::size_t> GradedHomology::ranks() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees_) out.push_back(d.rank);
    return out;
}

bool GradedHomology::is_zero() const {
    return std::all_of(degrees_.begin(), degrees_.end(),
                       [](const HomologyDegree& d) { return d.rank == 0 && d.torsion.empty(); });
}

std::vector<Scalar> GradedHomology::coordinates(std::size_t n, const Chain& cycle) const {
    return solver_->coordinates(n, cycle);
}

Chain GradedHomology::boundary_of(std::size_t n, const Chain& chain) const {
    if (n == 0 || n >= complex_->degree_count()) return {};
    std::map<std::uint32_t, Scalar> acc;
    const auto& cols = complex_->boundary(n);
    for (const auto& e : chain) {
        for (const auto& [row, sign] : cols.at(e.generator)) acc[row] += e.coeff * sign;
    }
    Chain out;
    for (auto& [i, v] : acc) {
        auto x = normalize(ring_, v);
        if (x != 0) out.push_back({i, x});
    }
    return out;
}

GradedHomology relative_homology(const CubicalSet& A, const CubicalSet& B, Ring ring) {
    auto cc = std::make_shared<const ChainComplex>(ChainComplex::relative(A, B));
    std::vector<HomologyDegree> degrees(cc->degree_count());

    if (ring == Ring::F2) {
        auto solver = std::make_shared<const FieldReduction<F2Field>>(*cc);
        for (std::size_t n = 0; n < degrees.size(); ++n) {
            degrees[n].rank = solver->rank(n);
            degrees[n].basis = solver->basis(n);
        }
        return GradedHomology(ring, cc, std::move(degrees), solver);
    }

    auto solver = std::make_shared<const FieldReduction<QField>>(*cc);
    for (std::size_t n = 0; n < degrees.size(); ++n) {
        degrees[n].rank = solver->rank(n);
        degrees[n].basis = solver->basis(n);
    }
    if (ring == Ring::Q) return GradedHomology(ring, cc, std::move(degrees), solver);

    // Z: free rank from Q, torsion from the Smith form of D_{n+1}.
    for (std::size_t n = 0; n < degrees.size(); ++n) {
        for (auto& b : degrees[n].basis) b = primitive_integer(b);
        if (n + 1 < degrees.size()) {
            const auto snf = smith_normal_form(cc->dense_boundary(n + 1));
            for (auto d : snf.invariant_factors()) {
                if (d > 1) degrees[n].torsion.push_back(d);
            }
        }
    }
    return GradedHomology(ring, cc, std::move(degrees), std::make_shared<const IntegerSolver>());
}

GradedHomology relative_homology(const CubicalPair& pair, Ring ring) { return relative_homology(pair.A, pair.B, ring); }

// ---------------------------------------------------------------------------
// Graded maps

GradedMap::GradedMap(Ring ring, int shift, std::vector<std::size_t> domain_ranks,
                     std::vector<std::size_t> codomain_ranks)
    : ring_(ring), shift_(shift), domain_ranks_(std::move(domain_ranks)), codomain_ranks_(std::move(codomain_ranks)) {
    if (ring == Ring::Z) throw UnsupportedRing("graded maps over Z are not supported; use F2 or Q");
    for (std::size_t n = 0; n < domain_ranks_.size(); ++n)
        blocks_.emplace_back(ring_, codomain_rank(static_cast<long>(n) + shift_), domain_ranks_[n]);
}

GradedMap GradedMap::identity(Ring ring, std::vector<std::size_t> ranks) {
    GradedMap m(ring, 0, ranks, ranks);
    for (std::size_t n = 0; n < ranks.size(); ++n) m.blocks_[n] = Matrix::identity(ring, ranks[n]);
    return m;
}

GradedMap GradedMap::zero(Ring ring, int shift, std::vector<std::size_t> domain_ranks,
                          std::vector<std::size_t> codomain_ranks) {
    return GradedMap(ring, shift, std::move(domain_ranks), std::move(codomain_ranks));
}

std::size_t GradedMap::codomain_rank(long degree) const {
    if (degree < 0 || static_cast<std::size_t>(degree) >= codomain_ranks_.size()) return 0;
    return codomain_ranks_[static_cast<std::size_t>(degree)];
}

void GradedMap::set_block(std::size_t n, Matrix m) {
    const auto& cur = blocks_.at(n);
    if (m.rows() != cur.rows() || m.cols() != cur.cols() || m.ring() != ring_)
        throw PreconditionError("graded map block has the wrong shape");
    blocks_[n] = std::move(m);
}

std::vector<std::size_t> GradedMap::ranks() const {
    std::vector<std::size_t> out;
    for (const auto& b : blocks_) out.push_back(b.rank());
    return out;
}

bool GradedMap::is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Matrix& m) { return m.is_zero(); });
}

namespace {

std::vector<std::size_t> trimmed(std::vector<std::size_t> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

}  // namespace

std::optional<GradedMap> GradedMap::inverse() const {
    if (shift_ != 0 || trimmed(domain_ranks_) != trimmed(codomain_ranks_)) return std::nullopt;
    GradedMap inv(ring_, 0, codomain_ranks_, domain_ranks_);
    for (std::size_t n = 0; n < codomain_ranks_.size(); ++n) {
        if (n >= blocks_.size()) continue;  // rank zero by the trimmed comparison
        auto b = blocks_[n].inverse();
        if (!b) return std::nullopt;
        inv.blocks_[n] = std::move(*b);
    }
    return inv;
}

bool GradedMap::is_isomorphism() const { return inverse().has_value(); }

GradedMap compose(const GradedMap& after, const GradedMap& before) {
    if (after.ring() != before.ring()) throw PreconditionError("composition of maps over different rings");
    if (trimmed(before.codomain_ranks()) != trimmed(after.domain_ranks()))
        throw PreconditionError("composition: codomain of the first map does not match the domain of the second");
    GradedMap out(before.ring(), before.shift() + after.shift(), before.domain_ranks(), after.codomain_ranks());
    for (std::size_t n = 0; n < before.domain_ranks().size(); ++n) {
        const long mid = static_cast<long>(n) + before.shift();
        if (mid < 0 || static_cast<std::size_t>(mid) >= after.domain_ranks().size()) continue;
        out.set_block(n, after.block(static_cast<std::size_t>(mid)) * before.block(n));
    }
    return out;
}

GradedMap induced_map(const GradedHomology& from, const GradedHomology& to, const CubeMap& chain_map) {
    if (from.ring() != to.ring()) throw PreconditionError("induced map between homologies over different rings");
    if (from.ring() == Ring::Z) throw UnsupportedRing("induced maps over Z are not supported; use F2 or Q");
    GradedMap out(from.ring(), 0, from.ranks(), to.ranks());
    const auto& src = from.complex();
    const auto& dst = to.complex();
    for (std::size_t n = 0; n < from.degree_count(); ++n) {
        const auto& basis = from.basis(n);
        if (basis.empty()) continue;
        Matrix block(from.ring(), out.codomain_rank(static_cast<long>(n)), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            std::map<std::uint32_t, Scalar> acc;
            for (const auto& e : basis[j]) {
                const auto& cube = src.generators(n)[e.generator];
                const ElementaryCube image = chain_map ? chain_map(cube) : cube;
                if (image.dimension() != n) throw PreconditionError("chain map changes cube dimension");
                if (auto idx = dst.index_of(image)) acc[*idx] += e.coeff;
            }
            Chain img;
            for (auto& [i, v] : acc) {
                auto x = normalize(from.ring(), v);
                if (x != 0) img.push_back({i, x});
            }
            if (n >= to.degree_count()) {
                if (!img.empty()) throw PreconditionError("chain map leaves the codomain complex");
                continue;
            }
            const auto coords = to.coordinates(n, img);
            for (std::size_t i = 0; i < coords.size(); ++i) block.set(i, j, coords[i]);
        }
        out.set_block(n, std::move(block));
    }
    return out;
}

GradedMap inclusion_induced_map(const CubicalPair& small, const CubicalPair& large, Ring ring) {
    if (ring == Ring::Z) throw UnsupportedRing("inclusion-induced maps over Z are not supported; use F2 or Q");
    if (!small.A.is_subset_of(large.A) || !small.B.is_subset_of(large.B))
        throw PreconditionError("inclusion-induced map: pairs are not nested");
    const auto from = relative_homology(small, ring);
    const auto to = relative_homology(large, ring);
    return induced_map(from, to);
}

GradedMap snake_connecting(const GradedHomology& h12, const GradedHomology& h23) {
    if (h12.ring() != h23.ring()) throw PreconditionError("connecting map between homologies over different rings");
    if (h12.ring() == Ring::Z) throw UnsupportedRing("connecting homomorphism over Z is not supported; use F2 or Q");
    const Ring ring = h12.ring();
    GradedMap out(ring, -1, h12.ranks(), h23.ranks());
    const auto& c12 = h12.complex();
    const auto& c23 = h23.complex();
    for (std::size_t n = 1; n < h12.degree_count(); ++n) {
        const auto& basis = h12.basis(n);
        if (basis.empty()) continue;
        Matrix block(ring, out.codomain_rank(static_cast<long>(n) - 1), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            // Lift to C(N1), take the full boundary and split it by where faces live.
            std::map<ElementaryCube, Scalar> acc;
            for (const auto& e : basis[j]) {
                for (const auto& [sign, f] : faces(c12.generators(n)[e.generator])) acc[f] += e.coeff * sign;
            }
            Chain landed;
            for (auto& [cube, v] : acc) {
                const auto x = normalize(ring, v);
                if (x == 0) continue;
                if (c12.index_of(cube))
                    throw InternalConsistencyError("snake lift: boundary does not land in the middle set");
                if (auto idx = c23.index_of(cube)) landed.push_back({*idx, x});
            }
            std::sort(landed.begin(), landed.end(),
                      [](const ChainEntry& a, const ChainEntry& b) { return a.generator < b.generator; });
            const auto coords = h23.coordinates(n - 1, landed);
            for (std::size_t i = 0; i < coords.size(); ++i) block.set(i, j, coords[i]);
        }
        out.set_block(n, std::move(block));
    }
    return out;
}

GradedMap snake_connecting(const CubicalSet& N1, const CubicalSet& N2, const CubicalSet& N3, Ring ring) {
    if (ring == Ring::Z) throw UnsupportedRing("connecting homomorphism over Z is not supported; use F2 or Q");
    if (!N3.is_subset_of(N2) || !N2.is_subset_of(N1))
        throw PreconditionError("snake_connecting: expected N3 c N2 c N1");
    return snake_connecting(relative_homology(N1, N2, ring), relative_homology(N2, N3, ring));
}

ExactnessReport exactness_check(std::span<const GradedMap> maps) {
    ExactnessReport report;
    for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
        const auto& in = maps[i];
        const auto& out = maps[i + 1];
        if (in.ring() != out.ring()) throw PreconditionError("exactness check: maps over different rings");
        if (trimmed(in.codomain_ranks()) != trimmed(out.domain_ranks()))
            throw PreconditionError("exactness check: map " + std::to_string(i) +
                                    " does not compose with its successor");
        const std::size_t degrees = std::max(in.codomain_ranks().size(), out.domain_ranks().size());
        for (std::size_t m = 0; m < degrees; ++m) {
            const std::size_t dim = m < out.domain_ranks().size() ? out.domain_ranks()[m] : in.codomain_rank(static_cast<long>(m));
            const long src = static_cast<long>(m) - in.shift();
            std::size_t image = 0;
            if (src >= 0 && static_cast<std::size_t>(src) < in.domain_ranks().size())
                image = in.rank(static_cast<std::size_t>(src));
            std::size_t out_rank = 0;
            if (m < out.domain_ranks().size()) out_rank = out.rank(m);
            ExactnessNode node{i, static_cast<long>(m), image, dim - out_rank, image == dim - out_rank};
            report.exact = report.exact && node.exact;
            report.nodes.push_back(node);
        }
    }
    return report;
}

}  // namespace conley::homology
