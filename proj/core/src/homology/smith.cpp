#include "conley/homology/smith.hpp"

#include "conley/errors.hpp"

#include <cstdlib>
#include <utility>

namespace conley::homology {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw SizeLimitExceeded("integer overflow in Smith normal form");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(a, b, &r)) throw SizeLimitExceeded("integer overflow in Smith normal form");
    return r;
}

// Row and column operations applied simultaneously to S and the transforms.
class Reducer {
public:
    explicit Reducer(const IntMatrix& m)
        : S(m), U(IntMatrix::identity(m.rows())), V(IntMatrix::identity(m.cols())) {}

    // row_i -= q * row_j
    void row_axpy(std::size_t i, std::size_t j, std::int64_t q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < S.cols(); ++c) S(i, c) = checked_sub(S(i, c), checked_mul(q, S(j, c)));
        for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = checked_sub(U(i, c), checked_mul(q, U(j, c)));
    }
    // col_i -= q * col_j
    void col_axpy(std::size_t i, std::size_t j, std::int64_t q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < S.rows(); ++r) S(r, i) = checked_sub(S(r, i), checked_mul(q, S(r, j)));
        for (std::size_t r = 0; r < V.rows(); ++r) V(r, i) = checked_sub(V(r, i), checked_mul(q, V(r, j)));
    }
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < S.cols(); ++c) std::swap(S(i, c), S(j, c));
        for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < S.rows(); ++r) std::swap(S(r, i), S(r, j));
        for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < S.cols(); ++c) S(i, c) = -S(i, c);
        for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
    }

    IntMatrix S, U, V;
};

// Truncating quotient; the remainder is smaller in magnitude than d.
std::int64_t quotient(std::int64_t a, std::int64_t d) { return a / d; }

}  // namespace

std::vector<std::int64_t> SmithForm::invariant_factors() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < S.rows() && i < S.cols(); ++i) {
        if (S(i, i) != 0) out.push_back(S(i, i));
    }
    return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
    Reducer red(m);
    IntMatrix& S = red.S;
    const std::size_t rows = S.rows();
    const std::size_t cols = S.cols();

    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        for (;;) {
            // Pivot: smallest nonzero absolute value in the trailing block, first in row-major order.
            std::size_t pr = rows, pc = cols;
            std::int64_t best = 0;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    const std::int64_t v = std::llabs(S(i, j));
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            }
            if (best == 0) {
                SmithForm out{std::move(red.U), std::move(red.S), std::move(red.V)};
                return out;
            }
            red.swap_rows(t, pr);
            red.swap_cols(t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                red.row_axpy(i, t, quotient(S(i, t), S(t, t)));
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                red.col_axpy(j, t, quotient(S(t, j), S(t, t)));
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into row t and retry.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (S(i, j) % S(t, t) != 0) {
                        red.row_axpy(t, i, -1);
                        divides = false;
                        break;
                    }
                }
            }
            if (!divides) continue;
            if (S(t, t) < 0) red.negate_row(t);
            break;
        }
    }
    return SmithForm{std::move(red.U), std::move(red.S), std::move(red.V)};
}

}  // namespace conley::homology
