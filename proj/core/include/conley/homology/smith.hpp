#pragma once

#include "conley/homology/matrix.hpp"

#include <cstdint>
#include <vector>

namespace conley::homology {

/// S = U * M * V with U, V unimodular and S diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;

    /// Nonzero diagonal entries in order.
    std::vector<std::int64_t> invariant_factors() const;
};

/// Integer Smith normal form by pivoting on the smallest absolute entry.
/// Overflow of int64 arithmetic raises conley::SizeLimitExceeded.
SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace conley::homology
