#include "latop/apps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "quad_support.hpp"

namespace latop {

namespace {

// Square root with the branch cut on the positive real axis: for
// z = |z| e^{i theta}, theta in [0, 2pi), returns |z|^{1/2} e^{i theta/2}.
// Keeps the two preimage branches of the Blaschke doubling exact and
// conjugate-symmetric at the equidistant nodes.
cplx sqrt_upper(cplx z) {
    double theta = std::atan2(z.imag(), z.real());
    if (theta < 0.0) theta += 2.0 * kPi;
    return std::sqrt(std::abs(z)) * cplx{std::cos(0.5 * theta), std::sin(0.5 * theta)};
}

void check_probs(const std::vector<double>& probs, size_t expected) {
    if (probs.size() != expected) {
        throw validation_error("probability vector length does not match the branch count");
    }
    double sum = 0.0;
    for (const double p : probs) {
        if (!(p >= 0.0)) throw validation_error("probabilities must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw validation_error("probabilities must sum to 1 within 1e-12");
    }
}

MapFn const_weight(double p) {
    return [p](cplx) { return cplx{p, 0.0}; };
}

// Index of the eigenvalue-1 entry; throws unless the leading eigenvalue is 1
// to 1e-10 and no other eigenvalue sits in that window.
int eigenvalue_one_index(const SpectralData& data) {
    if (std::abs(data.eigenvalues(0) - 1.0) > 1e-10) {
        throw numerical_error("leading eigenvalue of the annealed matrix is not 1 to 1e-10");
    }
    for (int i = 1; i < data.eigenvalues.size(); ++i) {
        if (std::abs(data.eigenvalues(i) - 1.0) <= 1e-10) {
            throw numerical_error("eigenvalue 1 of the annealed matrix is not simple");
        }
    }
    return 0;
}

std::vector<cplx> node_points(const Foci& foci, int n) {
    const ChebGrid grid = cheb_nodes(n);
    std::vector<cplx> pts(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) pts[static_cast<size_t>(k)] = focal_affine(foci, grid.nodes[static_cast<size_t>(k)]);
    return pts;
}

double real_part_checked(cplx value, const char* what) {
    if (std::abs(value.imag()) > 1e-10) {
        throw numerical_error(std::string(what) + ": imaginary part exceeds the 1e-10 diagnostic");
    }
    return value.real();
}

}  // namespace

cplx correlation_decay(const MapWeightSystem& system, int n) {
    if (n < 2) throw validation_error("correlation_decay: need n >= 2");
    const SpectralData data = eigendecompose(assemble_cheb(system, n));
    return data.eigenvalues(1);
}

MapFn mobius_from_matrix(const Eigen::Matrix2d& A) {
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    return [a, b, c, d](cplx z) { return ((a - b) * z + b) / ((a + c - b - d) * z + (b + d)); };
}

MapFn mobius_weight_from_matrix(const Eigen::Matrix2d& A) {
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    return [a, b, c, d](cplx z) { return (a + c - b - d) * z + (b + d); };
}

CircleSystem blaschke_system(cplx mu) {
    if (!(std::abs(mu) < 1.0 / 3.0)) {
        throw validation_error("blaschke_system: |mu| must be less than 1/3");
    }
    const cplx mub = std::conj(mu);
    const double squared = std::norm(mu);
    CircleSystem system;
    system.orientation = 1;
    for (const double sign : {1.0, -1.0}) {
        CircleBranch branch;
        branch.map = [sign, mu, mub](cplx z) {
            const cplx u = sign * sqrt_upper(z);
            return (u + mu) / (1.0 + mub * u);
        };
        branch.deriv = [sign, mub, squared](cplx z) {
            const cplx u = sign * sqrt_upper(z);
            const cplx denom = 1.0 + mub * u;
            return (1.0 - squared) / (denom * denom * (2.0 * u));
        };
        system.inverse_branches.push_back(std::move(branch));
    }
    // w = tau': together with the branch derivative this weights every
    // preimage by exactly 1, the normalization whose leading eigenfunctional
    // is the measure of maximal entropy (leading eigenvalue = degree).
    system.weight = [mu, mub, squared](cplx zeta) {
        const cplx denom = 1.0 - mub * zeta;
        return 2.0 * (zeta - mu) * (1.0 - squared) / (denom * denom * denom);
    };
    return system;
}

namespace {

// Extended-precision assembly of the Blaschke collocation matrix. The
// leading eigenvalues of this matrix have condition numbers around 1e7 at
// n ~ 50; double-precision entry rounding alone already moves them by ~1e-9,
// so both the entries and the eigenvalue iteration run in __float128 here.
quad::QMatrix assemble_blaschke_quad(cplx mu, int n) {
    using quad::qcplx;
    const int size = 2 * n;
    const qcplx mu_q = quad::from_double(mu);
    const qcplx mub_q = quad::conj(mu_q);
    const quad::real squared = mu_q.re * mu_q.re + mu_q.im * mu_q.im;
    const quad::real one{1};

    quad::QMatrix B(size);
    for (int k = 0; k < size; ++k) {
        const quad::real theta = (2 * k + 1) * quad::pi() / (2 * n);
        const qcplx root = quad::polar(theta / 2);
        for (const int sign : {1, -1}) {
            const qcplx u = static_cast<quad::real>(sign) * root;
            const qcplx denom = qcplx{one, 0} + mub_q * u;
            const qcplx phi = (u + mu_q) / denom;
            const qcplx dphi = qcplx{one - squared, 0} / (denom * denom * (static_cast<quad::real>(2) * u));
            const qcplx wden = qcplx{one, 0} - mub_q * phi;
            const qcplx w = static_cast<quad::real>(2) * (phi - mu_q) * qcplx{one - squared, 0} /
                            (wden * wden * wden);
            const qcplx coeff = w * dphi;
            // powers phi^j, j = -n .. n-1
            qcplx p{one, 0};
            for (int j = 0; j < n; ++j) p = p * phi;  // phi^n
            p = qcplx{one, 0} / p;                    // phi^{-n}
            for (int j = 0; j < size; ++j) {
                B.at(k, j) = B.at(k, j) + coeff * p;
                p = p * phi;
            }
        }
    }

    quad::QMatrix M(size);
    const quad::real inv_size = one / static_cast<quad::real>(size);
    for (int l = 0; l < size; ++l) {
        for (int k = 0; k < size; ++k) {
            const quad::real theta = (2 * k + 1) * quad::pi() / (2 * n);
            const qcplx f = quad::polar(-(l - n) * theta);
            for (int j = 0; j < size; ++j) {
                M.at(l, j) = M.at(l, j) + inv_size * f * B.at(k, j);
            }
        }
    }
    return M;
}

}  // namespace

SpectralData blaschke_benchmark(cplx mu, int n) {
    if (!(std::abs(mu) < 1.0 / 3.0)) {
        throw validation_error("blaschke_benchmark: |mu| must be less than 1/3");
    }
    if (n < 1) throw validation_error("blaschke_benchmark: n must be >= 1");
    const int size = 2 * n;

    const quad::QMatrix Mq = assemble_blaschke_quad(mu, n);
    CollocationMatrix cm;
    cm.basis = BasisKind::laurent;
    cm.n = size;
    cm.entries.resize(size, size);
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) cm.entries(i, j) = quad::to_double(Mq.at(i, j));
    }

    SpectralData data = eigendecompose(cm);

    const int refine_count = std::min(10, size);
    std::vector<quad::qcplx> refined(static_cast<size_t>(refine_count));
    for (int i = 0; i < refine_count; ++i) {
        std::vector<cplx> v(static_cast<size_t>(size));
        for (int j = 0; j < size; ++j) v[static_cast<size_t>(j)] = data.right_vectors(j, i);
        refined[static_cast<size_t>(i)] = quad::refine_eigenvalue(Mq, data.eigenvalues(i), v);
    }
    for (int i = 0; i < refine_count; ++i) {
        for (int j = i + 1; j < refine_count; ++j) {
            if (quad::abs(refined[static_cast<size_t>(i)] - refined[static_cast<size_t>(j)]) < 1e-25) {
                throw numerical_error("blaschke_benchmark: eigenvalue refinement collapsed two estimates");
            }
        }
    }
    const double norm_target =
        0.05e-10 * cm.entries.cwiseAbs().rowwise().sum().maxCoeff();
    for (int i = 0; i < refine_count; ++i) {
        const cplx lambda = quad::to_double(refined[static_cast<size_t>(i)]);
        data.eigenvalues(i) = lambda;
        data.right_vectors.col(i) =
            anchor_eigenvector(cm.entries, lambda, data.right_vectors.col(i), norm_target);
        data.left_vectors.col(i) = anchor_eigenvector(cm.entries.transpose(), lambda,
                                                      data.left_vectors.col(i), norm_target);
    }

    // Refinement can reorder neighbours; re-sort everything together.
    std::vector<int> order(static_cast<size_t>(size));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return eigen_order_less(data.eigenvalues(i), data.eigenvalues(j));
    });
    SpectralData sorted;
    sorted.basis = data.basis;
    sorted.eigenvalues.resize(size);
    sorted.right_vectors.resize(size, size);
    sorted.left_vectors.resize(size, size);
    for (int i = 0; i < size; ++i) {
        const int src = order[static_cast<size_t>(i)];
        sorted.eigenvalues(i) = data.eigenvalues(src);
        sorted.right_vectors.col(i) = data.right_vectors.col(src);
        sorted.left_vectors.col(i) = data.left_vectors.col(src);
    }
    const double norm_inf = cm.entries.cwiseAbs().rowwise().sum().maxCoeff();
    double worst = 0.0;
    for (int i = 0; i < size; ++i) {
        worst = std::max(worst, (cm.entries * sorted.right_vectors.col(i) -
                                 sorted.eigenvalues(i) * sorted.right_vectors.col(i))
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    sorted.residual = worst / norm_inf;
    return sorted;
}

MapWeightSystem annealed_system(const IfsProblem& problem) {
    check_probs(problem.probs, problem.maps.size());
    MapWeightSystem system;
    system.foci = problem.foci;
    system.R = problem.R;
    for (size_t i = 0; i < problem.maps.size(); ++i) {
        system.branches.push_back({problem.maps[i].map, const_weight(problem.probs[i])});
    }
    return system;
}

MapWeightSystem annealed_system(const RandomMatrixProblem& problem) {
    check_probs(problem.probs, problem.matrices.size());
    MapWeightSystem system;
    system.foci = problem.foci;
    system.R = problem.R;
    for (size_t i = 0; i < problem.matrices.size(); ++i) {
        system.branches.push_back(
            {mobius_from_matrix(problem.matrices[i]), const_weight(problem.probs[i])});
    }
    return system;
}

namespace {

void validate_matrices(const RandomMatrixProblem& problem) {
    if (problem.matrices.empty()) throw validation_error("no matrices given");
    for (const Eigen::Matrix2d& A : problem.matrices) {
        if (!(A.minCoeff() > 0.0)) {
            throw validation_error("matrix entries must all be positive");
        }
        if (A.determinant() == 0.0) throw validation_error("matrices must be invertible");
    }
    check_probs(problem.probs, problem.matrices.size());
    if (!(problem.R > 1.0)) throw validation_error("R must exceed 1");

    // Principal-branch validity: Re(w_A) > 0 at the assembly nodes is checked
    // per n; the boundary of the working ellipse is checked here once.
    for (int j = 0; j < 256; ++j) {
        const double theta = 2.0 * kPi * j / 256;
        const cplx z =
            focal_affine(problem.foci, joukowski(problem.R * cplx{std::cos(theta), std::sin(theta)}));
        for (const Eigen::Matrix2d& A : problem.matrices) {
            if (!(mobius_weight_from_matrix(A)(z).real() > 0.0)) {
                throw validation_error("Re(w_A) <= 0 on the working ellipse boundary");
            }
        }
    }
}

}  // namespace

double lyapunov_matrices(const RandomMatrixProblem& problem, int n) {
    validate_matrices(problem);
    const std::vector<cplx> nodes = node_points(problem.foci, n);
    std::vector<MapFn> weights;
    for (const Eigen::Matrix2d& A : problem.matrices) {
        weights.push_back(mobius_weight_from_matrix(A));
    }
    for (const cplx& s : nodes) {
        for (const MapFn& w : weights) {
            if (!(w(s).real() > 0.0)) {
                throw validation_error("Re(w_A) <= 0 at an assembly node");
            }
        }
    }

    const SpectralData data = eigendecompose(assemble_cheb(annealed_system(problem), n));
    const EigenFunctional functional = eigenfunctional(data, eigenvalue_one_index(data));

    std::vector<cplx> g(nodes.size(), cplx{});
    for (size_t k = 0; k < nodes.size(); ++k) {
        for (size_t i = 0; i < weights.size(); ++i) {
            g[k] += problem.probs[i] * std::log(weights[i](nodes[k]));
        }
    }
    return real_part_checked(apply_functional(functional, g), "lyapunov_matrices");
}

namespace {

void validate_ifs(const IfsProblem& problem, int n) {
    if (problem.maps.empty()) throw validation_error("no IFS branches given");
    check_probs(problem.probs, problem.maps.size());
    if (!(problem.R > 1.0)) throw validation_error("R must exceed 1");
    const EllipticDomain domain{problem.foci, problem.R};
    for (const cplx& s : node_points(problem.foci, n)) {
        for (const IfsBranch& branch : problem.maps) {
            if (!contains(domain, branch.map(s))) {
                throw validation_error("an IFS branch sends an assembly node outside the working ellipse");
            }
        }
    }
}

}  // namespace

cplx ifs_integral(const IfsProblem& problem, int n) {
    validate_ifs(problem, n);
    if (!problem.observable) throw validation_error("ifs_integral: no observable given");
    const SpectralData data = eigendecompose(assemble_cheb(annealed_system(problem), n));
    const EigenFunctional functional = eigenfunctional(data, eigenvalue_one_index(data));
    const std::vector<cplx> nodes = node_points(problem.foci, n);
    std::vector<cplx> g(nodes.size());
    for (size_t k = 0; k < nodes.size(); ++k) g[k] = problem.observable(nodes[k]);
    return apply_functional(functional, g);
}

double ifs_lyapunov(const IfsProblem& problem, int n) {
    validate_ifs(problem, n);
    const std::vector<cplx> nodes = node_points(problem.foci, n);
    for (const IfsBranch& branch : problem.maps) {
        if (!branch.deriv) throw validation_error("ifs_lyapunov: branch derivative missing");
        for (const cplx& s : nodes) {
            const cplx d = branch.deriv(s);
            if (!(d.real() > 0.0) || std::abs(d.imag()) > 1e-10 * std::max(1.0, std::abs(d))) {
                throw validation_error("ifs_lyapunov: branch derivative not positive on the segment");
            }
        }
    }
    const SpectralData data = eigendecompose(assemble_cheb(annealed_system(problem), n));
    const EigenFunctional functional = eigenfunctional(data, eigenvalue_one_index(data));
    std::vector<cplx> g(nodes.size(), cplx{});
    for (size_t k = 0; k < nodes.size(); ++k) {
        for (size_t i = 0; i < problem.maps.size(); ++i) {
            g[k] += problem.probs[i] * std::log(problem.maps[i].deriv(nodes[k]));
        }
    }
    return -real_part_checked(apply_functional(functional, g), "ifs_lyapunov");
}

}  // namespace latop
