#pragma once

#include <span>
#include <vector>

#include "latop/types.hpp"

namespace latop {

/// Zeros of the degree-n Chebyshev polynomial T_n,
/// x_k = cos((2k+1)pi/(2n)), k = 0..n-1 (strictly decreasing).
struct ChebGrid {
    int n = 0;
    std::vector<double> nodes;
};

/// Chebyshev coefficients d_0..d_{n-1} with the halved-constant convention
///   f ~ d_0/2 + sum_{l>=1} d_l T_l.
struct ChebCoeffs {
    std::vector<cplx> coeffs;
    int size() const { return static_cast<int>(coeffs.size()); }
};

/// The 2n equidistant nodes z_k = exp(i(2k+1)pi/(2n)), the roots of -1.
struct FourierGrid {
    int n = 0;  // half the node count
    std::vector<cplx> nodes;
};

/// Laurent coefficients c_l for degrees l = -n..n-1, stored at index l+n;
///   f ~ (1/2n) sum_l c_l z^l.
struct LaurentCoeffs {
    int n = 0;  // half the coefficient count
    std::vector<cplx> coeffs;

    cplx& at_degree(int l) { return coeffs[static_cast<size_t>(l + n)]; }
    const cplx& at_degree(int l) const { return coeffs[static_cast<size_t>(l + n)]; }
};

ChebGrid cheb_nodes(int n);

/// Coefficients of the unique degree-(n-1) interpolant through samples taken
/// at the n Chebyshev nodes: d_l = (2/n) sum_k values_k T_l(x_k).
ChebCoeffs cheb_transform(std::span<const cplx> values);

/// d_0/2 + sum d_l T_l(x), valid for complex x via the three-term recurrence.
cplx cheb_eval(const ChebCoeffs& coeffs, cplx x);

FourierGrid equi_nodes(int n);

/// Laurent interpolation coefficients c_l = sum_k values_k z_k^{-l}, l = -n..n-1
/// (a discrete Fourier transform of the sample sequence).
LaurentCoeffs laurent_transform(std::span<const cplx> values);

/// (1/2n) sum_l c_l z^l; z must be nonzero.
cplx laurent_eval(const LaurentCoeffs& coeffs, cplx z);

/// T_0(x)..T_{count-1}(x) by the three-term recurrence.
std::vector<cplx> cheb_t_values(int count, cplx x);

}  // namespace latop
