#pragma once

#include <span>
#include <vector>

#include "latop/types.hpp"

namespace latop {

/// Open region bounded by the ellipse with the given foci whose preimage
/// under the Joukowski map is the annulus of parameter rho > 1. In standard
/// coordinates (foci {1,-1}) the semi-axes are cosh(log rho), sinh(log rho).
struct EllipticDomain {
    Foci foci;
    double rho = 1.0;
};

/// Open annulus { 1/rho < |z| < rho }, rho > 1.
struct AnnularDomain {
    double rho = 1.0;
};

/// Result of a confocal contraction-ratio search.
struct ContractionReport {
    double R_star = 0.0;
    double r_star = 0.0;
    double ratio = 0.0;  // r_star / R_star, in (0,1)
    int samples_per_boundary = 0;
};

/// (z + 1/z)/2; z must be nonzero.
cplx joukowski(cplx z);

/// alpha(z) = ((plus-minus)/2) z + (plus+minus)/2, the affine map taking
/// the standard foci {1,-1} to the given pair.
cplx focal_affine(const Foci& foci, cplx z);
cplx focal_affine_inv(const Foci& foci, cplx w);

/// Smallest rho >= 1 whose closed standard ellipse contains w:
/// max(|w+s|, |w-s|) for either square root s of w^2-1. Equals 1 on [-1,1].
double elliptic_radius(cplx w);

/// True iff elliptic_radius(alpha^{-1}(point)) <= rho - margin.
bool contains(const EllipticDomain& domain, cplx point, double margin = 0.0);

/// Max over maps and boundary samples of the confocal elliptic radius of the
/// image: the smallest confocal parameter r (up to sampling) such that every
/// map sends the domain into the ellipse of parameter r.
double image_radius(std::span<const MapFn> maps, const EllipticDomain& domain, int samples);

/// Scan R over the grid, compute r = image_radius for each admissible R and
/// return the R minimising r/R. R values where a map is non-finite on the
/// sampled boundary or where r >= R (no contraction) are skipped.
ContractionReport contraction_search(std::span<const MapFn> maps, const Foci& foci,
                                     std::span<const double> R_grid, int samples);

/// Uniform grid of `count` points on [lo, hi] (both ends included).
std::vector<double> uniform_grid(double lo, double hi, int count);

}  // namespace latop
