#include "latop/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace latop {

namespace {

constexpr double kResidualTol = 1e-10;

// Round to 12 significant decimal digits; keeps comparisons transitive while
// collapsing solver noise between conjugate-pair moduli.
double quantize(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    const double e = std::floor(std::log10(std::abs(x)));
    const double scale = std::pow(10.0, e - 11.0);
    if (scale == 0.0) return 0.0;  // deep denormals collapse to zero
    return std::round(x / scale) * scale;
}

}  // namespace

bool eigen_order_less(cplx a, cplx b) {
    const double ma = quantize(std::abs(a));
    const double mb = quantize(std::abs(b));
    if (ma != mb) return ma > mb;
    const double ra = quantize(a.real());
    const double rb = quantize(b.real());
    if (ra != rb) return ra > rb;
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() > b.real();
}

namespace {

std::vector<int> sorted_order(const Eigen::VectorXcd& values) {
    std::vector<int> order(static_cast<size_t>(values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return eigen_order_less(values(i), values(j)); });
    return order;
}

// Scale so the first entry of maximal modulus becomes exactly 1.
void normalize_unit_max(Eigen::Ref<Eigen::VectorXcd> v) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best) {
            best = std::abs(v(i));
            arg = i;
        }
    }
    if (best > 0.0) v /= v(arg);
}

double residual_inf(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& v, cplx lambda) {
    return (M * v - lambda * v).cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::VectorXcd inverse_iteration_step(const Eigen::MatrixXcd& M, cplx lambda,
                                        const Eigen::VectorXcd& start) {
    Eigen::MatrixXcd shifted = M;
    shifted.diagonal().array() -= lambda;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    Eigen::VectorXcd w = lu.solve(start);
    if (!w.allFinite() || w.cwiseAbs().maxCoeff() == 0.0) return start;
    normalize_unit_max(w);
    return w;
}

// Re-anchor an eigenvector estimate at the stored lambda until its residual
// clears the target (the paired solver eigenvalue generally differs from
// lambda in the last bits, much more inside ill-conditioned clusters).
// Factors the shift once and keeps the best iterate; intermediate passes may
// be non-monotone while the iteration sorts out nearby singular directions.
Eigen::VectorXcd anchor_eigenvector(const Eigen::MatrixXcd& M, cplx lambda, Eigen::VectorXcd v,
                                    double target) {
    double best = residual_inf(M, v, lambda);
    if (best <= target) return v;
    Eigen::MatrixXcd shifted = M;
    shifted.diagonal().array() -= lambda;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    Eigen::VectorXcd best_v = v;
    const int size = static_cast<int>(M.rows());

    // The supplied vector can be an exact fixed point of the iteration (an
    // eigenvector of a nearby eigenvalue), so also restart from generic
    // deterministic vectors.
    std::vector<Eigen::VectorXcd> starts{std::move(v), Eigen::VectorXcd::Ones(size)};
    {
        Eigen::VectorXcd alt(size);
        for (int i = 0; i < size; ++i) {
            alt(i) = cplx{1.0 + 0.5 * std::cos(1.0 + i), 0.5 * std::sin(2.0 + 3.0 * i)};
        }
        starts.push_back(std::move(alt));
    }
    for (const Eigen::VectorXcd& start : starts) {
        Eigen::VectorXcd cur = start;
        for (int pass = 0; pass < 8; ++pass) {
            Eigen::VectorXcd w = lu.solve(cur);
            if (!w.allFinite() || w.cwiseAbs().maxCoeff() == 0.0) break;
            normalize_unit_max(w);
            cur = std::move(w);
            const double res = residual_inf(M, cur, lambda);
            if (res < best) {
                best = res;
                best_v = cur;
            }
            if (best <= 0.2 * target) break;
        }
        if (best <= 0.2 * target) break;
    }
    return best_v;
}

SpectralData eigendecompose(const CollocationMatrix& matrix) {
    const Eigen::MatrixXcd& M = matrix.entries;
    if (M.rows() != M.cols() || M.rows() < 1) {
        throw validation_error("eigendecompose: matrix must be square and nonempty");
    }
    if (!M.allFinite()) throw validation_error("eigendecompose: matrix has non-finite entries");
    const int size = static_cast<int>(M.rows());

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> right(M, true);
    if (right.info() != Eigen::Success) {
        throw numerical_error("eigendecompose: eigensolver failed to converge");
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> left(M.transpose(), true);
    if (left.info() != Eigen::Success) {
        throw numerical_error("eigendecompose: eigensolver failed to converge (transpose pass)");
    }

    const std::vector<int> order = sorted_order(right.eigenvalues());

    SpectralData data;
    data.basis = matrix.basis;
    data.eigenvalues.resize(size);
    data.right_vectors.resize(size, size);
    data.left_vectors.resize(size, size);

    const double norm_inf = std::max(M.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
    const double target = 0.05 * kResidualTol * norm_inf;
    double worst_residual = 0.0;

    for (int i = 0; i < size; ++i) {
        const int src = order[static_cast<size_t>(i)];
        const cplx lambda = right.eigenvalues()(src);
        data.eigenvalues(i) = lambda;
        Eigen::VectorXcd v = right.eigenvectors().col(src);
        normalize_unit_max(v);

        // Left vector: start from the eigenvector of M^T whose eigenvalue is
        // nearest to lambda, then re-anchor at lambda itself.
        int best = 0;
        double best_dist = std::abs(left.eigenvalues()(0) - lambda);
        for (int j = 1; j < size; ++j) {
            const double d = std::abs(left.eigenvalues()(j) - lambda);
            if (d < best_dist) {
                best = j;
                best_dist = d;
            }
        }
        Eigen::VectorXcd u = left.eigenvectors().col(best);
        normalize_unit_max(u);

        v = anchor_eigenvector(M, lambda, std::move(v), target);
        u = anchor_eigenvector(M.transpose(), lambda, std::move(u), target);

        data.right_vectors.col(i) = v;
        data.left_vectors.col(i) = u;
        worst_residual = std::max(worst_residual, residual_inf(M, v, lambda));

        if (residual_inf(M.transpose(), u, lambda) > kResidualTol * norm_inf) {
            throw numerical_error("eigendecompose: left-eigenvector residual exceeds contract");
        }
    }

    data.residual = worst_residual / norm_inf;
    if (data.residual > kResidualTol) {
        throw numerical_error("eigendecompose: eigenvector residual exceeds contract");
    }
    return data;
}

ChebCoeffs eigenfunction_cheb(const SpectralData& data, int index) {
    if (data.basis != BasisKind::chebyshev) {
        throw validation_error("eigenfunction_cheb: spectral data is not in the chebyshev basis");
    }
    if (index < 0 || index >= data.eigenvalues.size()) {
        throw validation_error("eigenfunction_cheb: index out of range");
    }
    const Eigen::VectorXcd x = data.right_vectors.col(index);
    ChebCoeffs out;
    out.coeffs.resize(static_cast<size_t>(x.size()));
    out.coeffs[0] = 2.0 * x(0);
    for (int l = 1; l < x.size(); ++l) out.coeffs[static_cast<size_t>(l)] = x(l);
    return out;
}

LaurentCoeffs eigenfunction_laurent(const SpectralData& data, int index) {
    if (data.basis != BasisKind::laurent) {
        throw validation_error("eigenfunction_laurent: spectral data is not in the laurent basis");
    }
    if (index < 0 || index >= data.eigenvalues.size()) {
        throw validation_error("eigenfunction_laurent: index out of range");
    }
    const Eigen::VectorXcd x = data.right_vectors.col(index);
    const int size = static_cast<int>(x.size());
    LaurentCoeffs out;
    out.n = size / 2;
    out.coeffs.resize(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) {
        out.coeffs[static_cast<size_t>(i)] = static_cast<double>(size) * x(i);
    }
    return out;
}

EigenFunctional eigenfunctional(const SpectralData& data, int index) {
    if (index < 0 || index >= data.eigenvalues.size()) {
        throw validation_error("eigenfunctional: index out of range");
    }
    if (data.eigenvalues(index) == cplx{}) {
        throw validation_error("eigenfunctional: eigenvalue is zero");
    }
    Eigen::VectorXcd x = data.left_vectors.col(index);
    // h^*(1) in coefficient coordinates is the constant-mode weight.
    const int const_mode = data.basis == BasisKind::chebyshev ? 0 : static_cast<int>(x.size()) / 2;
    const cplx scale = x(const_mode);
    if (std::abs(scale) < 1e-12 * x.cwiseAbs().maxCoeff()) {
        throw validation_error("eigenfunctional: h*(1) = 0, normalization impossible");
    }
    EigenFunctional out;
    out.basis = data.basis;
    out.weights = x / scale;
    return out;
}

cplx apply_functional(const EigenFunctional& functional, std::span<const cplx> node_samples) {
    if (functional.basis == BasisKind::chebyshev) {
        if (static_cast<int>(node_samples.size()) != functional.weights.size()) {
            throw validation_error("apply_functional: sample count does not match basis size");
        }
        const ChebCoeffs d = cheb_transform(node_samples);
        cplx acc = functional.weights(0) * (0.5 * d.coeffs[0]);
        for (int l = 1; l < functional.weights.size(); ++l) {
            acc += functional.weights(l) * d.coeffs[static_cast<size_t>(l)];
        }
        return acc;
    }
    const int size = functional.weights.size();
    if (static_cast<int>(node_samples.size()) != size) {
        throw validation_error("apply_functional: sample count does not match basis size");
    }
    const LaurentCoeffs c = laurent_transform(node_samples);
    cplx acc{};
    for (int i = 0; i < size; ++i) {
        acc += functional.weights(i) * c.coeffs[static_cast<size_t>(i)] / static_cast<double>(size);
    }
    return acc;
}

std::vector<ConvergenceRow> convergence_table(
    const std::function<CollocationMatrix(int)>& assemble, std::span<const int> n_list,
    int eigen_index, std::optional<std::pair<double, double>> contraction) {
    if (n_list.empty()) throw validation_error("convergence_table: empty n list");
    for (size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) {
            throw validation_error("convergence_table: n list must be strictly increasing");
        }
    }

    std::vector<SpectralData> runs;
    runs.reserve(n_list.size());
    for (const int n : n_list) runs.push_back(eigendecompose(assemble(n)));

    const SpectralData& seed_run = runs.back();
    if (eigen_index < 0 || eigen_index >= seed_run.eigenvalues.size()) {
        throw validation_error("convergence_table: eigen index out of range at the largest n");
    }

    // Chain the chosen eigenvalue from the largest n downward by proximity.
    std::vector<cplx> tracked(n_list.size());
    cplx current = seed_run.eigenvalues(eigen_index);
    tracked.back() = current;
    for (size_t i = n_list.size() - 1; i-- > 0;) {
        const Eigen::VectorXcd& ev = runs[i].eigenvalues;
        int best = 0;
        double best_dist = std::abs(ev(0) - current);
        bool ambiguous = false;
        for (int j = 1; j < ev.size(); ++j) {
            const double d = std::abs(ev(j) - current);
            if (d < best_dist) {
                best = j;
                best_dist = d;
                ambiguous = false;
            } else if (d == best_dist && ev(j) != ev(best)) {
                // equidistant *distinct* candidates; repeated eigenvalues are fine
                ambiguous = true;
            }
        }
        if (ambiguous && ev.size() > 1) {
            std::ostringstream msg;
            msg << "convergence_table: ambiguous eigenvalue match at n=" << n_list[i]
                << ": candidates equidistant from " << current << " include " << ev(best);
            for (int j = 0; j < ev.size(); ++j) {
                if (j != best && std::abs(ev(j) - current) == best_dist) msg << " and " << ev(j);
            }
            throw numerical_error(msg.str());
        }
        current = ev(best);
        tracked[i] = current;
    }

    std::vector<ConvergenceRow> rows(n_list.size());
    for (size_t i = 0; i < n_list.size(); ++i) {
        rows[i].n = n_list[i];
        rows[i].eigenvalue = tracked[i];
        if (i > 0) rows[i].diff_prev = std::abs(tracked[i] - tracked[i - 1]);
        if (contraction) {
            rows[i].bound = std::pow(contraction->first / contraction->second, n_list[i]);
        }
    }
    return rows;
}

}  // namespace latop
