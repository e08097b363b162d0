#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "latop/polybasis.hpp"
#include "latop/transferop.hpp"
#include "latop/types.hpp"

namespace latop {

/// Full dense eigendecomposition. Eigenvalues are sorted by descending
/// modulus, ties broken by descending real part, then ascending imaginary
/// part (modulus and real part compared after rounding to 12 significant
/// digits so conjugate pairs order deterministically). Columns of
/// right_vectors/left_vectors are normalized so the first max-modulus entry
/// equals 1; left vectors satisfy M^T u = lambda u.
struct SpectralData {
    BasisKind basis = BasisKind::chebyshev;
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd right_vectors;
    Eigen::MatrixXcd left_vectors;
    double residual = 0.0;  // max_i ||M v_i - lambda_i v_i||_inf / ||M||_inf
};

/// Linear functional h^* = sum_l x_l e_l^* scaled so that h^*(1) = 1.
struct EigenFunctional {
    BasisKind basis = BasisKind::chebyshev;
    Eigen::VectorXcd weights;
};

struct ConvergenceRow {
    int n = 0;
    cplx eigenvalue;
    std::optional<double> diff_prev;  // |lambda_n - lambda_{n_prev}|
    std::optional<double> bound;      // (r/R)^n when declared
};

SpectralData eigendecompose(const CollocationMatrix& matrix);

/// Deterministic eigenvalue ordering used throughout (see SpectralData).
bool eigen_order_less(cplx a, cplx b);

/// One shifted inverse-iteration pass; returns an improved eigenvector for
/// lambda (normalized to unit max entry), or `start` if the solve degenerates.
Eigen::VectorXcd inverse_iteration_step(const Eigen::MatrixXcd& M, cplx lambda,
                                        const Eigen::VectorXcd& start);

/// Drive an eigenvector estimate for lambda below the residual target
/// (inf-norm, absolute) by repeated inverse iteration with deterministic
/// restarts; returns the best iterate found.
Eigen::VectorXcd anchor_eigenvector(const Eigen::MatrixXcd& M, cplx lambda, Eigen::VectorXcd start,
                                    double target);

/// Coefficients of the eigenfunction h = sum_l x_l e_l built from the
/// index-th right eigenvector. Only plain eigenvectors are extracted;
/// Jordan chains of defective eigenvalues are out of scope.
ChebCoeffs eigenfunction_cheb(const SpectralData& data, int index);
LaurentCoeffs eigenfunction_laurent(const SpectralData& data, int index);

/// Functional for the index-th eigenvalue, normalized so h^*(1) = 1.
EigenFunctional eigenfunctional(const SpectralData& data, int index);

/// Apply a functional to a function given by its samples at the basis nodes
/// (n Chebyshev nodes or 2n equidistant nodes).
cplx apply_functional(const EigenFunctional& functional, std::span<const cplx> node_samples);

/// Track one eigenvalue across a strictly increasing list of basis sizes.
/// Matching is seeded at the largest n (eigen_index-th eigenvalue there) and
/// chained downward by nearest eigenvalue. The bound column is (r/R)^n when
/// the contraction pair (r, R) is declared.
std::vector<ConvergenceRow> convergence_table(
    const std::function<CollocationMatrix(int)>& assemble, std::span<const int> n_list,
    int eigen_index, std::optional<std::pair<double, double>> contraction = std::nullopt);

}  // namespace latop
