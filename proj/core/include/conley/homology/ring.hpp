#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace conley::homology {

/// Coefficient ring of a chain complex. F2 and Q are fields; Z supports only
/// ranks and torsion of single pairs.
enum class Ring { F2, Q, Z };

/// Exact scalar used in public matrices and chains. Under F2 only 0 and 1 occur.
using Scalar = boost::multiprecision::cpp_rational;

std::string to_string(Ring ring);
Ring parse_ring(std::string_view text);  // throws conley::ConfigError

inline bool is_field(Ring ring) noexcept { return ring != Ring::Z; }

/// Reduce a scalar into the ring's canonical representative (mod 2 for F2).
Scalar normalize(Ring ring, const Scalar& value);

std::string scalar_to_string(const Scalar& value);

}  // namespace conley::homology
