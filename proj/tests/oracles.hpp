#pragma once

#include "conley/homology/cube.hpp"
#include "conley/homology/matrix.hpp"

#include <algorithm>
#include <map>

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

// Reference computations kept independent of the library algorithms.
namespace oracle {

inline std::size_t rank_mod2(const conley::homology::IntMatrix& m) {
    std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = static_cast<int>(((m(i, j) % 2) + 2) % 2);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && a[p][c] == 0) ++p;
        if (p == m.rows()) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i != r && a[i][c])
                for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] ^= a[r][j];
        }
        ++r;
    }
    return r;
}

inline std::int64_t det(std::vector<std::vector<std::int64_t>> a) {
    // Cofactor expansion; fine for the tiny sizes used in tests.
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    std::int64_t total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::int64_t> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(a[i][j]);
            minor.push_back(row);
        }
        const std::int64_t term = a[0][c] * det(minor);
        total += (c % 2 == 0) ? term : -term;
    }
    return total;
}

// gcd of all k x k minors.
inline std::int64_t determinantal_divisor(const conley::homology::IntMatrix& m, std::size_t k) {
    std::int64_t g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    auto choose = [](std::size_t n, std::size_t k, auto&& fn) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        if (k > n) return;
        for (;;) {
            fn(idx);
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) return;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    };
    choose(m.rows(), k, [&](const std::vector<std::size_t>& r) {
        choose(m.cols(), k, [&](const std::vector<std::size_t>& c) {
            std::vector<std::vector<std::int64_t>> sub(k, std::vector<std::int64_t>(k));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(r[i], c[j]);
            g = std::gcd(g, std::llabs(det(sub)));
        });
    });
    return g;
}

// Mod-2 vectors as bit rows.
using Row = std::vector<std::uint8_t>;

inline std::size_t rank_rows(std::vector<Row> rows) {
    std::size_t r = 0;
    const std::size_t width = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && !rows[p][c]) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i][c])
                for (std::size_t j = 0; j < width; ++j) rows[i][j] ^= rows[r][j];
        ++r;
    }
    return r;
}

// Basis of {x : sum_j x_j col_j = 0} for columns given as rows of length m.
inline std::vector<Row> nullspace(const std::vector<Row>& cols, std::size_t m) {
    const std::size_t n = cols.size();
    // Augment each column with its identity tag and eliminate on the first m bits.
    std::vector<Row> a(n, Row(m + n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        std::copy(cols[j].begin(), cols[j].end(), a[j].begin());
        a[j][m + j] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        std::size_t p = r;
        while (p < n && !a[p][c]) ++p;
        if (p == n) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < n; ++i)
            if (i != r && a[i][c])
                for (std::size_t j = 0; j < m + n; ++j) a[i][j] ^= a[r][j];
        ++r;
    }
    std::vector<Row> out;
    for (std::size_t i = r; i < n; ++i) out.emplace_back(a[i].begin() + static_cast<long>(m), a[i].end());
    return out;
}

// Faces of an elementary cube, ignoring signs.
inline std::vector<conley::homology::ElementaryCube> faces_mod2(const conley::homology::ElementaryCube& q) {
    using conley::homology::Interval;
    std::vector<conley::homology::ElementaryCube> out;
    const auto iv = q.intervals();
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (iv[i].degenerate) continue;
        for (int shift : {0, 1}) {
            std::vector<Interval> f(iv.begin(), iv.end());
            f[i] = Interval{iv[i].lower + shift, true};
            out.emplace_back(f);
        }
    }
    return out;
}

// Generators of C(X)/C(Y) by dimension, indexed.
struct RelativeCells {
    std::vector<std::map<conley::homology::ElementaryCube, std::size_t>> index;

    RelativeCells(const conley::homology::CubicalSet& X, const conley::homology::CubicalSet& Y, std::size_t dims) {
        index.resize(dims + 1);
        for (const auto& q : X.cubes())
            if (!Y.contains(q)) index[q.dimension()].emplace(q, index[q.dimension()].size());
    }
    std::size_t count(std::size_t n) const { return n < index.size() ? index[n].size() : 0; }

    // Chain (mod 2) of `cells` in this complex's degree-n basis; cells outside vanish.
    template <class Range>
    Row chain(std::size_t n, const Range& cells) const {
        Row v(count(n), 0);
        for (const auto& c : cells) {
            auto it = index[n].find(c);
            if (it != index[n].end()) v[it->second] ^= 1;
        }
        return v;
    }

    std::vector<Row> boundary_columns(std::size_t n) const {
        std::vector<Row> cols;
        if (n == 0) return std::vector<Row>(count(0));
        if (n >= index.size()) return cols;
        std::vector<std::pair<std::size_t, conley::homology::ElementaryCube>> ordered;
        for (const auto& [q, i] : index[n]) ordered.emplace_back(i, q);
        std::sort(ordered.begin(), ordered.end(), [](auto& a, auto& b) { return a.first < b.first; });
        for (const auto& [i, q] : ordered) cols.push_back(chain(n - 1, faces_mod2(q)));
        return cols;
    }
};

// Betti numbers of (X, Y) over F2 for degrees 0..dims.
inline std::vector<std::size_t> relative_betti_mod2(const conley::homology::CubicalSet& X,
                                                    const conley::homology::CubicalSet& Y, std::size_t dims) {
    const RelativeCells cells(X, Y, dims);
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= dims; ++n) {
        const std::size_t rn = rank_rows(cells.boundary_columns(n));
        const std::size_t rn1 = rank_rows(cells.boundary_columns(n + 1));
        out.push_back(cells.count(n) - rn - rn1);
    }
    return out;
}

// Rank of the connecting map H_n(N1,N2) -> H_{n-1}(N2,N3) over F2, from
// dim ker(H_{n-1}(N2,N3) -> H_{n-1}(N1,N3)).
inline std::size_t connecting_rank_mod2(const conley::homology::CubicalSet& N1, const conley::homology::CubicalSet& N2,
                                        const conley::homology::CubicalSet& N3, std::size_t n, std::size_t dims) {
    const std::size_t m = n - 1;
    const RelativeCells c23(N2, N3, dims), c13(N1, N3, dims);
    // Cycles of (N2, N3) in degree m.
    const auto z = nullspace(c23.boundary_columns(m), m == 0 ? 0 : c23.count(m - 1));
    std::vector<std::pair<std::size_t, conley::homology::ElementaryCube>> order23;
    for (const auto& [q, i] : c23.index[m]) order23.emplace_back(i, q);
    std::sort(order23.begin(), order23.end(), [](auto& a, auto& b) { return a.first < b.first; });
    auto push = [&](const Row& x) {
        std::vector<conley::homology::ElementaryCube> cells;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i]) cells.push_back(order23[i].second);
        return c13.chain(m, cells);
    };
    const auto b23 = c23.boundary_columns(m + 1);
    const auto b13 = c13.boundary_columns(m + 1);
    const std::size_t h23 = z.size() - rank_rows(b23);
    std::vector<Row> image = b13;
    const std::size_t rb13 = rank_rows(b13);
    for (const auto& x : z) image.push_back(push(x));
    const std::size_t rank_i = rank_rows(image) - rb13;
    return h23 - rank_i;
}

}  // namespace oracle
