#include "latop/polybasis.hpp"

#include <cmath>

namespace latop {

ChebGrid cheb_nodes(int n) {
    if (n < 1) throw validation_error("cheb_nodes: n must be >= 1");
    ChebGrid grid;
    grid.n = n;
    grid.nodes.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        grid.nodes[static_cast<size_t>(k)] = std::cos((2 * k + 1) * kPi / (2.0 * n));
    }
    return grid;
}

std::vector<cplx> cheb_t_values(int count, cplx x) {
    std::vector<cplx> t(static_cast<size_t>(count));
    if (count > 0) t[0] = 1.0;
    if (count > 1) t[1] = x;
    for (int l = 2; l < count; ++l) {
        t[static_cast<size_t>(l)] = 2.0 * x * t[static_cast<size_t>(l - 1)] - t[static_cast<size_t>(l - 2)];
    }
    return t;
}

ChebCoeffs cheb_transform(std::span<const cplx> values) {
    const int n = static_cast<int>(values.size());
    if (n < 1) throw validation_error("cheb_transform: empty sample vector");
    const ChebGrid grid = cheb_nodes(n);
    ChebCoeffs out;
    out.coeffs.assign(static_cast<size_t>(n), cplx{});
    for (int k = 0; k < n; ++k) {
        const std::vector<cplx> t = cheb_t_values(n, grid.nodes[static_cast<size_t>(k)]);
        for (int l = 0; l < n; ++l) {
            out.coeffs[static_cast<size_t>(l)] += values[static_cast<size_t>(k)] * t[static_cast<size_t>(l)];
        }
    }
    for (auto& d : out.coeffs) d *= 2.0 / n;
    return out;
}

cplx cheb_eval(const ChebCoeffs& coeffs, cplx x) {
    const int n = coeffs.size();
    if (n == 0) return {};
    cplx acc = 0.5 * coeffs.coeffs[0];
    cplx t_prev = 1.0;
    cplx t_cur = x;
    for (int l = 1; l < n; ++l) {
        acc += coeffs.coeffs[static_cast<size_t>(l)] * t_cur;
        const cplx t_next = 2.0 * x * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
    }
    return acc;
}

FourierGrid equi_nodes(int n) {
    if (n < 1) throw validation_error("equi_nodes: n must be >= 1");
    FourierGrid grid;
    grid.n = n;
    grid.nodes.resize(static_cast<size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) {
        const double theta = (2 * k + 1) * kPi / (2.0 * n);
        grid.nodes[static_cast<size_t>(k)] = cplx{std::cos(theta), std::sin(theta)};
    }
    return grid;
}

LaurentCoeffs laurent_transform(std::span<const cplx> values) {
    const int count = static_cast<int>(values.size());
    if (count < 2 || count % 2 != 0) {
        throw validation_error("laurent_transform: sample count must be even and positive");
    }
    const int n = count / 2;
    const FourierGrid grid = equi_nodes(n);
    LaurentCoeffs out;
    out.n = n;
    out.coeffs.assign(static_cast<size_t>(count), cplx{});
    for (int k = 0; k < count; ++k) {
        const cplx z = grid.nodes[static_cast<size_t>(k)];
        const cplx zinv = 1.0 / z;
        // powers z^{-l} built from l = -n upward: z^{n}, ..., z^{-(n-1)}
        cplx p = std::pow(z, n);
        for (int l = -n; l < n; ++l) {
            out.coeffs[static_cast<size_t>(l + n)] += values[static_cast<size_t>(k)] * p;
            p *= zinv;
        }
    }
    return out;
}

cplx laurent_eval(const LaurentCoeffs& coeffs, cplx z) {
    if (z == cplx{}) throw validation_error("laurent_eval: z must be nonzero");
    const int n = coeffs.n;
    cplx acc{};
    cplx p = std::pow(z, -n);
    for (int l = -n; l < n; ++l) {
        acc += coeffs.at_degree(l) * p;
        p *= z;
    }
    return acc / (2.0 * n);
}

}  // namespace latop
