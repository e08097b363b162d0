#include "latop/transferop.hpp"

#include <cmath>

#include "latop/polybasis.hpp"

namespace latop {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

CollocationMatrix assemble_cheb(const MapWeightSystem& system, int n) {
    if (n < 1) throw validation_error("assemble_cheb: n must be >= 1");
    if (system.branches.empty()) throw validation_error("assemble_cheb: system has no branches");
    const ChebGrid grid = cheb_nodes(n);

    // A_{kl} = ((2 - delta_{0k})/n) T_k(x_l)
    Eigen::MatrixXcd A(n, n);
    for (int l = 0; l < n; ++l) {
        const std::vector<cplx> t = cheb_t_values(n, grid.nodes[static_cast<size_t>(l)]);
        for (int k = 0; k < n; ++k) {
            A(k, l) = t[static_cast<size_t>(k)] * ((k == 0 ? 1.0 : 2.0) / n);
        }
    }

    // B_{kl} = (L T_l)(x_k) = sum_j W_j(s_k) T_l(alpha^{-1}(Phi_j(s_k)))
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
    const std::optional<double> r = system.r;
    for (const MapWeightBranch& branch : system.branches) {
        for (int k = 0; k < n; ++k) {
            const cplx sample = focal_affine(system.foci, grid.nodes[static_cast<size_t>(k)]);
            const cplx w = branch.weight(sample);
            const cplx image = branch.map(sample);
            if (!finite(w) || !finite(image)) {
                throw validation_error("assemble_cheb: non-finite map or weight value at a node");
            }
            if (r && !contains(EllipticDomain{system.foci, *r}, image)) {
                throw validation_error(
                    "assemble_cheb: branch image of a node lies outside the declared image ellipse");
            }
            const cplx pulled_back = focal_affine_inv(system.foci, image);
            const std::vector<cplx> t = cheb_t_values(n, pulled_back);
            for (int l = 0; l < n; ++l) {
                B(k, l) += w * t[static_cast<size_t>(l)];
            }
        }
    }

    CollocationMatrix out;
    out.basis = BasisKind::chebyshev;
    out.n = n;
    out.entries = A * B;
    if (!out.entries.allFinite()) {
        throw validation_error("assemble_cheb: assembled matrix has non-finite entries");
    }
    return out;
}

CollocationMatrix assemble_circle(const CircleSystem& system, int n) {
    if (n < 1) throw validation_error("assemble_circle: n must be >= 1");
    if (system.inverse_branches.empty()) {
        throw validation_error("assemble_circle: system has no branches");
    }
    if (system.orientation != 1 && system.orientation != -1) {
        throw validation_error("assemble_circle: orientation must be +1 or -1");
    }
    const int size = 2 * n;
    const FourierGrid grid = equi_nodes(n);

    // B_{kj} = (L e_j)(z_k), columns indexed by Laurent degree j - n
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(size, size);
    std::vector<std::vector<cplx>> images_at_node(static_cast<size_t>(size));
    for (const CircleBranch& branch : system.inverse_branches) {
        for (int k = 0; k < size; ++k) {
            const cplx z = grid.nodes[static_cast<size_t>(k)];
            const cplx image = branch.map(z);
            for (const cplx& other : images_at_node[static_cast<size_t>(k)]) {
                if (other == image) {
                    throw validation_error(
                        "assemble_circle: two branches produce the same preimage at a node");
                }
            }
            images_at_node[static_cast<size_t>(k)].push_back(image);
            if (image == cplx{}) {
                throw validation_error("assemble_circle: branch image hits 0 (Laurent basis undefined)");
            }
            const cplx coeff =
                static_cast<double>(system.orientation) * system.weight(image) * branch.deriv(z);
            if (!finite(coeff) || !finite(image)) {
                throw validation_error("assemble_circle: non-finite branch data at a node");
            }
            cplx p = std::pow(image, -n);
            for (int j = 0; j < size; ++j) {
                B(k, j) += coeff * p;
                p *= image;
            }
        }
    }

    // M_{lj} = (1/2n) sum_k z_k^{-(l-n)} B_{kj}
    Eigen::MatrixXcd F(size, size);
    for (int k = 0; k < size; ++k) {
        const cplx z = grid.nodes[static_cast<size_t>(k)];
        const cplx zinv = 1.0 / z;
        cplx p = std::pow(z, n);  // z^{-(l-n)} at l = 0
        for (int l = 0; l < size; ++l) {
            F(l, k) = p / static_cast<double>(size);
            p *= zinv;
        }
    }

    CollocationMatrix out;
    out.basis = BasisKind::laurent;
    out.n = size;
    out.entries = F * B;
    if (!out.entries.allFinite()) {
        throw validation_error("assemble_circle: assembled matrix has non-finite entries");
    }
    return out;
}

std::vector<cplx> apply_operator(const MapWeightSystem& system, const MapFn& f,
                                 std::span<const cplx> points) {
    std::vector<cplx> out(points.size(), cplx{});
    for (size_t i = 0; i < points.size(); ++i) {
        cplx acc{};
        for (const MapWeightBranch& branch : system.branches) {
            const cplx value = branch.weight(points[i]) * f(branch.map(points[i]));
            if (!finite(value)) {
                throw validation_error("apply_operator: non-finite evaluation");
            }
            acc += value;
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace latop
