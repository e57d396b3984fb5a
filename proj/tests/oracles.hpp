#pragma once

// Brute-force reference computations used as test oracles. Deliberately naive
// and independent of the library's kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "srlu/matrix.hpp"
#include "srlu/sketch.hpp"

namespace oracle {

using srlu::cplx;
using srlu::DenseMatrix;

template <class T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    DenseMatrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T s(0);
            for (std::size_t q = 0; q < a.cols(); ++q) s += a(i, q) * b(q, j);
            c(i, j) = s;
        }
    return c;
}

template <class T>
DenseMatrix<T> adjoint(const DenseMatrix<T>& a) {
    DenseMatrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if constexpr (std::same_as<T, double>) out(j, i) = a(i, j);
            else out(j, i) = std::conj(a(i, j));
        }
    return out;
}

template <class T>
double fro(const DenseMatrix<T>& a) {
    double s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::norm(std::complex<double>(a(i, j)));
    return std::sqrt(s);
}

template <class T>
double fro_diff(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    double s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::norm(std::complex<double>(a(i, j) - b(i, j)));
    return std::sqrt(s);
}

/// Unitary DFT matrix F(s, j) = n^{-1/2} exp(-2 pi i s j / n).
inline DenseMatrix<cplx> dft_matrix(std::size_t n) {
    DenseMatrix<cplx> f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((s * j) % n) / static_cast<double>(n);
            f(s, j) = std::polar(scale, angle);
        }
    return f;
}

/// Unitary Sylvester Hadamard matrix built by recursive doubling.
inline DenseMatrix<double> hadamard_matrix(std::size_t n) {
    std::vector<std::vector<double>> h{{1.0}};
    while (h.size() < n) {
        const std::size_t s = h.size();
        std::vector<std::vector<double>> next(2 * s, std::vector<double>(2 * s));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                next[i][j] = h[i][j];
                next[i][j + s] = h[i][j];
                next[i + s][j] = h[i][j];
                next[i + s][j + s] = -h[i][j];
            }
        h = std::move(next);
    }
    DenseMatrix<double> out(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = scale * h[i][j];
    return out;
}

/// Dense S from its hash map and signs.
template <class T>
DenseMatrix<T> sem_dense(const srlu::SparseEmbedding& s) {
    DenseMatrix<T> out(s.out_dim(), s.in_dim());
    for (std::size_t j = 0; j < s.in_dim(); ++j) out(s.row_of()[j], j) = T(static_cast<double>(s.sign()[j]));
    return out;
}

/// Dense Pi = scale * R * F * D, F from the brute-force transform matrices.
template <class T>
DenseMatrix<T> fast_dense(const srlu::FastTransformSketch& pi) {
    const std::size_t pad = pi.pad();
    DenseMatrix<T> out(pi.out_dim(), pi.in_dim());
    if constexpr (std::same_as<T, double>) {
        const auto h = hadamard_matrix(pad);
        for (std::size_t t = 0; t < pi.out_dim(); ++t)
            for (std::size_t j = 0; j < pi.in_dim(); ++j)
                out(t, j) = pi.scale() * h(pi.sample_idx()[t], j) * pi.phase()[j].real();
    } else {
        const auto f = dft_matrix(pad);
        for (std::size_t t = 0; t < pi.out_dim(); ++t)
            for (std::size_t j = 0; j < pi.in_dim(); ++j)
                out(t, j) = pi.scale() * f(pi.sample_idx()[t], j) * pi.phase()[j];
    }
    return out;
}

template <class T>
DenseMatrix<T> composite_dense(const srlu::CompositeSketch& omega) {
    return matmul(fast_dense<T>(omega.fast()), sem_dense<T>(omega.sem()));
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, descending.
inline std::vector<double> jacobi_eigenvalues(DenseMatrix<double> a) {
    const std::size_t n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

/// Singular values of a real matrix from the Jacobi eigen-solve of its smaller Gram matrix.
inline std::vector<double> singular_values_gram(const DenseMatrix<double>& a) {
    const bool wide = a.rows() < a.cols();
    const auto g = wide ? matmul(a, adjoint(a)) : matmul(adjoint(a), a);
    auto ev = jacobi_eigenvalues(g);
    for (double& v : ev) v = std::sqrt(std::max(v, 0.0));
    return ev;
}

/// Orthonormal columns by twice-iterated modified Gram-Schmidt.
template <class T>
DenseMatrix<T> gram_schmidt(DenseMatrix<T> a) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t q = 0; q < j; ++q) {
                T dot(0);
                for (std::size_t i = 0; i < a.rows(); ++i) dot += srlu::conj(a(i, q)) * a(i, j);
                for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) -= dot * a(i, q);
            }
        double n2 = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) n2 += srlu::abs2(a(i, j));
        const double n = std::sqrt(n2);
        for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) /= n;
    }
    return a;
}

/// Median of a copy.
inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace oracle
