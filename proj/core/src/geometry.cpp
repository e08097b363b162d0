#include "latop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latop {

cplx joukowski(cplx z) {
    if (z == cplx{}) throw validation_error("joukowski: z must be nonzero");
    return 0.5 * (z + 1.0 / z);
}

cplx focal_affine(const Foci& foci, cplx z) {
    return 0.5 * (foci.plus - foci.minus) * z + 0.5 * (foci.plus + foci.minus);
}

cplx focal_affine_inv(const Foci& foci, cplx w) {
    const cplx half_span = 0.5 * (foci.plus - foci.minus);
    if (half_span == cplx{}) throw validation_error("focal_affine_inv: degenerate foci");
    return (w - 0.5 * (foci.plus + foci.minus)) / half_span;
}

double elliptic_radius(cplx w) {
    // Either branch of sqrt works: the two candidates |w+s|, |w-s| are
    // reciprocal in modulus, and the max is the annulus parameter.
    const cplx s = std::sqrt(w * w - 1.0);
    return std::max(std::abs(w + s), std::abs(w - s));
}

bool contains(const EllipticDomain& domain, cplx point, double margin) {
    return elliptic_radius(focal_affine_inv(domain.foci, point)) <= domain.rho - margin;
}

namespace {

// max elliptic radius over map images of the sampled boundary, or NaN if a
// map value is non-finite at some sample.
double image_radius_impl(std::span<const MapFn> maps, const EllipticDomain& domain, int samples) {
    double r = 1.0;
    for (int j = 0; j < samples; ++j) {
        const double theta = 2.0 * kPi * j / samples;
        const cplx ring = domain.rho * cplx{std::cos(theta), std::sin(theta)};
        const cplx boundary = focal_affine(domain.foci, joukowski(ring));
        for (const MapFn& map : maps) {
            const cplx image = map(boundary);
            if (!std::isfinite(image.real()) || !std::isfinite(image.imag())) {
                return std::numeric_limits<double>::quiet_NaN();
            }
            r = std::max(r, elliptic_radius(focal_affine_inv(domain.foci, image)));
        }
    }
    return r;
}

}  // namespace

double image_radius(std::span<const MapFn> maps, const EllipticDomain& domain, int samples) {
    if (samples < 64) throw validation_error("image_radius: need at least 64 boundary samples");
    const double r = image_radius_impl(maps, domain, samples);
    if (std::isnan(r)) throw validation_error("image_radius: non-finite map value on sampled boundary");
    return r;
}

ContractionReport contraction_search(std::span<const MapFn> maps, const Foci& foci,
                                     std::span<const double> R_grid, int samples) {
    if (R_grid.empty()) throw validation_error("contraction_search: empty R grid");
    ContractionReport best;
    best.ratio = std::numeric_limits<double>::infinity();
    best.samples_per_boundary = samples;
    for (const double R : R_grid) {
        if (!(R > 1.0)) throw validation_error("contraction_search: grid values must exceed 1");
        const double r = image_radius_impl(maps, EllipticDomain{foci, R}, samples);
        if (std::isnan(r) || r >= R) continue;
        if (r / R < best.ratio) {
            best.R_star = R;
            best.r_star = r;
            best.ratio = r / R;
        }
    }
    if (!(best.ratio < 1.0)) {
        throw validation_error("contraction_search: no grid value gives a contraction (r < R)");
    }
    return best;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
    std::vector<double> grid(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        grid[static_cast<size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    }
    return grid;
}

}  // namespace latop
