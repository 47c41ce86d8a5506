#pragma once

#include "conley/homology/ring.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace conley::homology {

/// Dense matrix over a field (F2 or Q) with exact entries.
class Matrix {
public:
    Matrix() = default;
    Matrix(Ring ring, std::size_t rows, std::size_t cols);

    static Matrix identity(Ring ring, std::size_t n);

    Ring ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, const Scalar& v);

    std::size_t rank() const;
    bool is_zero() const;
    bool is_identity() const;
    /// Inverse when square and nonsingular.
    std::optional<Matrix> inverse() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Ring ring_ = Ring::F2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Dense integer matrix (boundary matrices, Smith normal form).
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// Product with overflow detection (throws conley::SizeLimitExceeded).
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    /// Rank over Q or F2 (exact elimination).
    std::size_t rank(Ring ring) const;
    Matrix to_field(Ring ring) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

}  // namespace conley::homology
