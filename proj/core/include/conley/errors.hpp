#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conley {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The requested coefficient ring cannot perform the operation (Z inversion).
class UnsupportedRing : public Error {
public:
    using Error::Error;
};

/// Input exceeds the desk-scale size limits.
class SizeLimitExceeded : public Error {
public:
    using Error::Error;
};

/// A result that must hold by construction did not (exactness, cycle checks).
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

/// An index pair or triple produced by construction failed verification.
class IrregularConstruction : public Error {
public:
    IrregularConstruction(const std::string& what, std::size_t slice, std::size_t cube)
        : Error(what + " (slice " + std::to_string(slice) + ", cube " + std::to_string(cube) + ")"),
          slice_(slice), cube_(cube) {}

    std::size_t slice() const noexcept { return slice_; }
    std::size_t cube() const noexcept { return cube_; }

private:
    std::size_t slice_;
    std::size_t cube_;
};

/// A slice-into-block inclusion is not an isomorphism in some degree.
class NonIsomorphicInclusion : public Error {
public:
    NonIsomorphicInclusion(std::size_t degree, std::size_t defect, const std::string& detail)
        : Error("inclusion is not an isomorphism in degree " + std::to_string(degree) +
                " (rank defect " + std::to_string(defect) + "): " + detail),
          degree_(degree), defect_(defect) {}

    std::size_t degree() const noexcept { return degree_; }
    std::size_t defect() const noexcept { return defect_; }

private:
    std::size_t degree_;
    std::size_t defect_;
};

/// The direct system never becomes a system of isomorphisms inside the window.
class NotStabilized : public Error {
public:
    using Error::Error;
};

/// No orbit from the repeller block to the attractor block meets the constraints.
class NoConnection : public Error {
public:
    using Error::Error;
};

/// The invariant part of a region touches the region's boundary.
class NotIsolating : public Error {
public:
    using Error::Error;
};

/// Scenario configuration failed to parse or validate.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace conley
