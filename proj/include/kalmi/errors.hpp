#pragma once

#include <stdexcept>
#include <string>

namespace kalmi {

// Thrown when a matrix required to be symmetric positive definite fails its
// factorization. Signals an invalid covariance somewhere upstream.
struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what)
        : std::runtime_error("not positive definite: " + what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what)
        : std::invalid_argument("dimension mismatch: " + what) {}
};

}  // namespace kalmi
