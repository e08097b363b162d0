#pragma once

// Independent oracles used by the test suites. None of these call into the
// library's eigensolver path: characteristic polynomials come from the
// Faddeev-LeVerrier recursion and roots from Durand-Kerner iteration.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "latop/types.hpp"

namespace latop::testing {

/// Coefficients c_1..c_n with det(tI - M) = t^n + c_1 t^{n-1} + ... + c_n.
inline std::vector<cplx> characteristic_coefficients(const Eigen::MatrixXcd& M) {
    const int n = static_cast<int>(M.rows());
    std::vector<cplx> coeffs(static_cast<size_t>(n));
    Eigen::MatrixXcd Mk = M;
    for (int k = 1; k <= n; ++k) {
        const cplx ck = -Mk.trace() / static_cast<double>(k);
        coeffs[static_cast<size_t>(k - 1)] = ck;
        if (k < n) {
            Mk.diagonal().array() += ck;
            Mk = M * Mk;
        }
    }
    return coeffs;
}

/// All roots of t^n + c_1 t^{n-1} + ... + c_n by Durand-Kerner iteration.
inline std::vector<cplx> durand_kerner_roots(const std::vector<cplx>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    auto eval = [&](cplx t) {
        cplx acc = 1.0;
        for (const cplx& c : coeffs) acc = acc * t + c;
        return acc;
    };
    std::vector<cplx> roots(static_cast<size_t>(n));
    const cplx seed{0.4, 0.9};
    cplx p = 1.0;
    for (int i = 0; i < n; ++i) {
        p *= seed;
        roots[static_cast<size_t>(i)] = p;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx denom = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j != i) denom *= roots[static_cast<size_t>(i)] - roots[static_cast<size_t>(j)];
            }
            const cplx step = eval(roots[static_cast<size_t>(i)]) / denom;
            roots[static_cast<size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return roots;
}

/// Eigenvalue multiset of M via the characteristic polynomial, scaled to
/// spectral radius ~1 for root-finder stability.
inline std::vector<cplx> companion_eigenvalues(const Eigen::MatrixXcd& M) {
    const double scale = std::max(M.cwiseAbs().rowwise().sum().maxCoeff(), 1e-30);
    const Eigen::MatrixXcd scaled = M / scale;
    std::vector<cplx> coeffs = characteristic_coefficients(scaled);
    std::vector<cplx> roots = durand_kerner_roots(coeffs);
    for (cplx& r : roots) r *= scale;
    return roots;
}

}  // namespace latop::testing
