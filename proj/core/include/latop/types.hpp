#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace latop {

using cplx = std::complex<double>;

/// Scalar function of one complex variable (map, weight, observable).
using MapFn = std::function<cplx(cplx)>;

/// Which interpolation basis a matrix or coefficient vector lives in.
enum class BasisKind { chebyshev, laurent };

/// Ordered focus pair (plus, minus). The standard segment [-1,1] is {1, -1}.
struct Foci {
    cplx plus;
    cplx minus;
};

inline constexpr double kPi = 3.14159265358979323846;

/// Malformed or inconsistent problem description (bad schema, bad task).
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input violates a documented precondition or domain invariant.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical procedure failed to meet its contract (non-convergence, ...).
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace latop
