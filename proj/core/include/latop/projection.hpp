#pragma once

#include "latop/polybasis.hpp"
#include "latop/types.hpp"

namespace latop {

/// Coefficients (in standard coordinates) of the degree-(n-1) polynomial that
/// agrees with f at the n mapped Chebyshev points alpha(x_k). Evaluate the
/// result at a point w via cheb_eval(coeffs, focal_affine_inv(foci, w)).
ChebCoeffs project_cheb(const MapFn& f, const Foci& foci, int n);

/// Laurent interpolant of f (degrees -n..n-1) at the 2n equidistant nodes.
LaurentCoeffs project_equi(const MapFn& f, int n);

/// Operator-norm bound on the interpolation error of the canonical embedding,
///   c_{r,R} cosh(n log r)/sinh(n log R),
/// c_{r,R} = sinh(log R)/(cosh(log R) - cosh(log r)), valid for 1 < r < R.
/// The same closed form applies on annuli and on confocal ellipse pairs.
double embedding_error_bound(double r, double R, int n);

/// Stability bound on the interpolation projection itself,
///   c_{r,R} (cosh(n log R) + cosh(n log r))/sinh(n log R).
double projection_norm_bound(double r, double R, int n);

}  // namespace latop
