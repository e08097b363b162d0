#include "latop/projection.hpp"

#include <cmath>

#include "latop/geometry.hpp"

namespace latop {

namespace {

void require_finite(cplx v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw validation_error(std::string(what) + ": non-finite sample value");
    }
}

}  // namespace

ChebCoeffs project_cheb(const MapFn& f, const Foci& foci, int n) {
    const ChebGrid grid = cheb_nodes(n);
    std::vector<cplx> samples(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        samples[static_cast<size_t>(k)] = f(focal_affine(foci, grid.nodes[static_cast<size_t>(k)]));
        require_finite(samples[static_cast<size_t>(k)], "project_cheb");
    }
    return cheb_transform(samples);
}

LaurentCoeffs project_equi(const MapFn& f, int n) {
    const FourierGrid grid = equi_nodes(n);
    std::vector<cplx> samples(static_cast<size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) {
        samples[static_cast<size_t>(k)] = f(grid.nodes[static_cast<size_t>(k)]);
        require_finite(samples[static_cast<size_t>(k)], "project_equi");
    }
    return laurent_transform(samples);
}

namespace {

double bound_prefactor(double r, double R) {
    if (!(r > 1.0) || !(r < R)) {
        throw validation_error("interpolation bounds require 1 < r < R");
    }
    return std::sinh(std::log(R)) / (std::cosh(std::log(R)) - std::cosh(std::log(r)));
}

}  // namespace

double embedding_error_bound(double r, double R, int n) {
    if (n < 1) throw validation_error("embedding_error_bound: n must be >= 1");
    // cosh(a)/sinh(b) written as exp(a-b)(1+exp(-2a))/(1-exp(-2b)) so large n
    // cannot overflow the intermediate hyperbolics.
    const double a = n * std::log(r);
    const double b = n * std::log(R);
    return bound_prefactor(r, R) * std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) /
           (1.0 - std::exp(-2.0 * b));
}

double projection_norm_bound(double r, double R, int n) {
    if (n < 1) throw validation_error("projection_norm_bound: n must be >= 1");
    const double a = n * std::log(r);
    const double b = n * std::log(R);
    return bound_prefactor(r, R) *
           (1.0 + std::exp(-2.0 * b) + std::exp(a - b) * (1.0 + std::exp(-2.0 * a))) /
           (1.0 - std::exp(-2.0 * b));
}

}  // namespace latop
