#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "latop/geometry.hpp"
#include "latop/types.hpp"

namespace latop {

/// One branch of a map-weight system: the operator acts as
/// f -> sum_i weight_i * (f o map_i).
struct MapWeightBranch {
    MapFn map;
    MapFn weight;
};

/// Finite family of holomorphic maps and weights on the ellipse of parameter
/// R with the given foci; r, when set, declares a confocal image ellipse that
/// every branch must map the assembly nodes into (checked at assembly time).
struct MapWeightSystem {
    std::vector<MapWeightBranch> branches;
    Foci foci;
    double R = 1.0;
    std::optional<double> r;
};

/// One inverse branch of an expanding circle map: the branch map phi and its
/// derivative dphi, both as functions on an annulus neighbourhood of the
/// unit circle.
struct CircleBranch {
    MapFn map;
    MapFn deriv;
};

/// Circle transfer-operator data. The operator acts as
///   f -> orientation * sum_i w(phi_i(z)) * dphi_i(z) * f(phi_i(z)),
/// with w the weight evaluated at the preimage.
struct CircleSystem {
    std::vector<CircleBranch> inverse_branches;
    MapFn weight;
    int orientation = 1;  // +1 orientation preserving, -1 reversing
};

/// Dense collocation matrix M_{kl} = e_k^*(L e_l) in the tagged basis.
/// n is the matrix dimension (n for chebyshev, 2n for laurent; for the
/// laurent basis row/column index i corresponds to Laurent degree i - n/2).
struct CollocationMatrix {
    BasisKind basis = BasisKind::chebyshev;
    int n = 0;
    Eigen::MatrixXcd entries;
};

/// Chebyshev collocation matrix of the map-weight system: samples maps and
/// weights at the mapped Chebyshev nodes alpha(x_m), pulls images back to
/// standard coordinates, and forms M = A B with
///   A_{kl} = ((2 - delta_{0k})/n) T_k(x_l),  B_{kl} = (L T_l)(x_k).
CollocationMatrix assemble_cheb(const MapWeightSystem& system, int n);

/// Equidistant Laurent collocation matrix of the circle system:
///   M_{lj} = (1/2n) sum_k (L e_j)(z_k) z_k^{-l},  l,j = -n..n-1.
CollocationMatrix assemble_circle(const CircleSystem& system, int n);

/// Pointwise values of (L f) at the given points.
std::vector<cplx> apply_operator(const MapWeightSystem& system, const MapFn& f,
                                 std::span<const cplx> points);

}  // namespace latop
