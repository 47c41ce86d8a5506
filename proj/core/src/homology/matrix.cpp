#include "conley/homology/matrix.hpp"

#include "conley/errors.hpp"

#include <utility>

namespace conley::homology {

std::string to_string(Ring ring) {
    switch (ring) {
        case Ring::F2: return "F2";
        case Ring::Q: return "Q";
        case Ring::Z: return "Z";
    }
    return "?";
}

Ring parse_ring(std::string_view text) {
    if (text == "F2") return Ring::F2;
    if (text == "Q") return Ring::Q;
    if (text == "Z") return Ring::Z;
    throw ConfigError("unknown coefficient ring '" + std::string(text) + "' (expected F2, Q or Z)");
}

Scalar normalize(Ring ring, const Scalar& value) {
    if (ring != Ring::F2) return value;
    using boost::multiprecision::cpp_int;
    const cpp_int den = boost::multiprecision::denominator(value);
    if (den % 2 == 0) throw PreconditionError("scalar with even denominator has no F2 image");
    cpp_int num = boost::multiprecision::numerator(value);
    cpp_int r = num % 2;
    if (r < 0) r += 2;
    return Scalar(r);
}

std::string scalar_to_string(const Scalar& value) { return value.str(); }

namespace {

// In-place Gauss-Jordan on a row-major buffer; returns the rank and the pivot columns.
std::size_t eliminate(Ring ring, std::vector<Scalar>& a, std::size_t rows, std::size_t cols,
                      std::vector<std::size_t>* pivots = nullptr) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p * cols + c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
        }
        const Scalar inv = Scalar(1) / a[r * cols + c];
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = normalize(ring, a[r * cols + j] * inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i * cols + c] == 0) continue;
            const Scalar f = a[i * cols + c];
            for (std::size_t j = c; j < cols; ++j)
                a[i * cols + j] = normalize(ring, a[i * cols + j] - f * a[r * cols + j]);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

}  // namespace

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {
    if (ring == Ring::Z) throw UnsupportedRing("field matrices require F2 or Q");
}

Matrix Matrix::identity(Ring ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) { data_[r * cols_ + c] = normalize(ring_, v); }

std::size_t Matrix::rank() const {
    auto copy = data_;
    return eliminate(ring_, copy, rows_, cols_);
}

bool Matrix::is_zero() const {
    for (const auto& v : data_) {
        if (v != 0) return false;
    }
    return true;
}

bool Matrix::is_identity() const { return rows_ == cols_ && *this == identity(ring_, rows_); }

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    std::vector<Scalar> aug(n * 2 * n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i * 2 * n + j] = data_[i * n + j];
        aug[i * 2 * n + n + i] = 1;
    }
    std::vector<std::size_t> piv;
    eliminate(ring_, aug, n, 2 * n, &piv);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= piv.size() || piv[i] != i) return std::nullopt;
    }
    Matrix out(ring_, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.data_[i * n + j] = aug[i * 2 * n + n + j];
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || a.ring_ != b.ring_) throw PreconditionError("matrix product shape or ring mismatch");
    Matrix out(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a.data_[i * a.cols_ + k];
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out.data_[i * b.cols_ + j] += x * b.data_[k * b.cols_ + j];
        }
    }
    for (auto& v : out.data_) v = normalize(out.ring_, v);
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("integer matrix product shape mismatch");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const std::int64_t x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                std::int64_t prod = 0;
                if (__builtin_mul_overflow(x, b(k, j), &prod) ||
                    __builtin_add_overflow(out(i, j), prod, &out(i, j)))
                    throw SizeLimitExceeded("integer overflow in matrix product");
            }
        }
    }
    return out;
}

Matrix IntMatrix::to_field(Ring ring) const {
    Matrix m(ring, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, Scalar((*this)(i, j)));
    return m;
}

std::size_t IntMatrix::rank(Ring ring) const {
    return to_field(ring == Ring::Z ? Ring::Q : ring).rank();
}

}  // namespace conley::homology
