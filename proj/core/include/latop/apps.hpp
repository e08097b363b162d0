#pragma once

#include <Eigen/Dense>
#include <vector>

#include "latop/spectral.hpp"
#include "latop/transferop.hpp"
#include "latop/types.hpp"

namespace latop {

/// Random products of positive invertible 2x2 matrices drawn i.i.d. with the
/// given probabilities; the working ellipse (foci, R) hosts the associated
/// Moebius maps.
struct RandomMatrixProblem {
    std::vector<Eigen::Matrix2d> matrices;
    std::vector<double> probs;
    Foci foci{cplx{0.0}, cplx{1.0}};
    double R = 1.0;
};

struct IfsBranch {
    MapFn map;
    MapFn deriv;
};

/// Iterated function system of holomorphic contractions of a segment, with
/// branch probabilities and an optional observable to integrate against the
/// stationary measure.
struct IfsProblem {
    std::vector<IfsBranch> maps;
    std::vector<double> probs;
    Foci foci{cplx{0.0}, cplx{1.0}};
    double R = 1.0;
    MapFn observable;
};

/// Subleading (second by modulus) eigenvalue of the Chebyshev collocation
/// matrix: the correlation-decay rate of the system.
cplx correlation_decay(const MapWeightSystem& system, int n);

/// Inverse-branch system of the degree-two Blaschke product with parameter
/// mu (|mu| < 1/3), weighted so that the operator fixes the measure of
/// maximal entropy (unit weight per preimage).
CircleSystem blaschke_system(cplx mu);

/// Spectral data of the 2n x 2n equidistant collocation matrix for the
/// Blaschke system. Assembly and the leading eigenvalues are computed in
/// extended precision internally; see the implementation note in apps.cpp.
SpectralData blaschke_benchmark(cplx mu, int n);

/// Top Lyapunov exponent of the random matrix product via the eigenvalue-1
/// left functional of the annealed operator applied to
/// g = sum_i p_i log(w_{A_i}).
double lyapunov_matrices(const RandomMatrixProblem& problem, int n);

/// Integral of the observable against the stationary measure of the IFS.
cplx ifs_integral(const IfsProblem& problem, int n);

/// Lyapunov exponent of the IFS: -integral of sum_i p_i log Phi_i' against
/// the stationary measure.
double ifs_lyapunov(const IfsProblem& problem, int n);

/// The annealed map-weight system (weights identically p_i) of an IFS or
/// random-matrix problem; exposed for diagnostics and the CLI.
MapWeightSystem annealed_system(const IfsProblem& problem);
MapWeightSystem annealed_system(const RandomMatrixProblem& problem);

/// Moebius map and weight denominator associated with a positive 2x2 matrix:
/// phi_A(z) = ((a-b)z + b)/w_A(z), w_A(z) = (a+c-b-d)z + (b+d).
MapFn mobius_from_matrix(const Eigen::Matrix2d& A);
MapFn mobius_weight_from_matrix(const Eigen::Matrix2d& A);

}  // namespace latop
