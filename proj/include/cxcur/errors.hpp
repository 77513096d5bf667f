#pragma once

#include <stdexcept>
#include <string>

namespace cxcur {

/// Bad caller input: shape mismatch, non-finite entries, out-of-range parameter.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A factorization did not converge.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Expected(c) produced an empty selection on every retry.
class EmptySampleError : public std::runtime_error {
public:
    explicit EmptySampleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cxcur
