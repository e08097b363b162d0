#pragma once

// Internal __float128 helpers for the one computation in the library whose
// eigenvalue conditioning exceeds what double-precision assembly can serve
// (see apps.cpp). Not installed, not part of the public API.

#include <quadmath.h>

#include <complex>
#include <vector>

#include "latop/types.hpp"

namespace latop::quad {

using real = __float128;

struct qcplx {
    real re{0};
    real im{0};
};

inline qcplx operator+(qcplx a, qcplx b) { return {a.re + b.re, a.im + b.im}; }
inline qcplx operator-(qcplx a, qcplx b) { return {a.re - b.re, a.im - b.im}; }
inline qcplx operator*(qcplx a, qcplx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline qcplx operator*(real a, qcplx b) { return {a * b.re, a * b.im}; }

// Smith's scaling-safe complex division.
inline qcplx operator/(qcplx a, qcplx b) {
    if (fabsq(b.re) >= fabsq(b.im)) {
        const real t = b.im / b.re;
        const real d = b.re + b.im * t;
        return {(a.re + a.im * t) / d, (a.im - a.re * t) / d};
    }
    const real t = b.re / b.im;
    const real d = b.re * t + b.im;
    return {(a.re * t + a.im) / d, (a.im * t - a.re) / d};
}

inline qcplx conj(qcplx a) { return {a.re, -a.im}; }
inline real abs(qcplx a) { return hypotq(a.re, a.im); }
inline qcplx from_double(cplx z) { return {static_cast<real>(z.real()), static_cast<real>(z.imag())}; }
inline cplx to_double(qcplx z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }
inline qcplx polar(real angle) { return {cosq(angle), sinq(angle)}; }
inline real pi() { return acosq(static_cast<real>(-1)); }

/// Row-major dense square matrix.
struct QMatrix {
    int n = 0;
    std::vector<qcplx> a;

    explicit QMatrix(int size) : n(size), a(static_cast<size_t>(size) * size) {}
    qcplx& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const qcplx& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

/// LU factorization with partial pivoting, reusable for multiple solves.
struct QLu {
    QMatrix lu;
    std::vector<int> perm;
    bool singular = false;

    explicit QLu(QMatrix m) : lu(std::move(m)), perm(static_cast<size_t>(lu.n)) {
        const int n = lu.n;
        for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
        for (int col = 0; col < n; ++col) {
            int pivot = col;
            real best = abs(lu.at(col, col));
            for (int row = col + 1; row < n; ++row) {
                const real cand = abs(lu.at(row, col));
                if (cand > best) {
                    best = cand;
                    pivot = row;
                }
            }
            if (best == 0) {
                singular = true;
                return;
            }
            if (pivot != col) {
                for (int j = 0; j < n; ++j) std::swap(lu.at(col, j), lu.at(pivot, j));
                std::swap(perm[static_cast<size_t>(col)], perm[static_cast<size_t>(pivot)]);
            }
            for (int row = col + 1; row < n; ++row) {
                const qcplx f = lu.at(row, col) / lu.at(col, col);
                lu.at(row, col) = f;
                for (int j = col + 1; j < n; ++j) {
                    lu.at(row, j) = lu.at(row, j) - f * lu.at(col, j);
                }
            }
        }
    }

    std::vector<qcplx> solve(const std::vector<qcplx>& b) const {
        const int n = lu.n;
        std::vector<qcplx> x(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = b[static_cast<size_t>(perm[static_cast<size_t>(i)])];
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                x[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] - lu.at(i, j) * x[static_cast<size_t>(j)];
            }
        }
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) {
                x[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] - lu.at(i, j) * x[static_cast<size_t>(j)];
            }
            x[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] / lu.at(i, i);
        }
        return x;
    }
};

inline std::vector<qcplx> matvec(const QMatrix& m, const std::vector<qcplx>& v) {
    std::vector<qcplx> out(static_cast<size_t>(m.n));
    for (int i = 0; i < m.n; ++i) {
        qcplx acc{};
        for (int j = 0; j < m.n; ++j) acc = acc + m.at(i, j) * v[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

inline int argmax_abs(const std::vector<qcplx>& v) {
    int arg = 0;
    real best = -1;
    for (size_t i = 0; i < v.size(); ++i) {
        const real a = abs(v[i]);
        if (a > best) {
            best = a;
            arg = static_cast<int>(i);
        }
    }
    return arg;
}

/// Sharpen one eigenvalue of m from a double-precision estimate by shifted
/// inverse iteration with component Rayleigh-quotient updates.
inline qcplx refine_eigenvalue(const QMatrix& m, cplx lambda0, const std::vector<cplx>& v0) {
    const int n = m.n;
    std::vector<qcplx> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = from_double(v0[static_cast<size_t>(i)]);
    {
        const qcplx pivot = v[static_cast<size_t>(argmax_abs(v))];
        if (abs(pivot) == 0) return from_double(lambda0);
        for (auto& x : v) x = x / pivot;
    }
    qcplx lam = from_double(lambda0);
    for (int round = 0; round < 2; ++round) {
        QMatrix shifted = m;
        for (int i = 0; i < n; ++i) shifted.at(i, i) = shifted.at(i, i) - lam;
        const QLu lu(std::move(shifted));
        if (lu.singular) return lam;
        for (int step = 0; step < 2; ++step) {
            std::vector<qcplx> w = lu.solve(v);
            const int k = argmax_abs(w);
            if (abs(w[static_cast<size_t>(k)]) == 0) return lam;
            const qcplx pivot = w[static_cast<size_t>(k)];
            for (auto& x : w) x = x / pivot;
            v = std::move(w);
        }
        const std::vector<qcplx> mv = matvec(m, v);
        const int k = argmax_abs(v);  // v[k] == 1 after normalization
        lam = mv[static_cast<size_t>(k)] / v[static_cast<size_t>(k)];
    }
    return lam;
}

}  // namespace latop::quad
