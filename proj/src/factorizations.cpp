#include "srlu/factorizations.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "srlu/rng.hpp"

namespace srlu {

namespace {
using index_t = std::ptrdiff_t;

template <Scalar T>
void swap_rows(DenseMatrix<T>& w, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w(a, j), w(b, j));
}
}  // namespace

// ---------------------------------------------------------------------------
// LU with row pivoting
// ---------------------------------------------------------------------------

template <Scalar T>
PivotedLU<T> lu_row_pivot(const DenseMatrix<T>& b) {
    const std::size_t m = b.rows();
    const std::size_t k = b.cols();
    if (m < k)
        throw DimensionError("lu_row_pivot: needs rows >= cols (got " + std::to_string(m) + "x" + std::to_string(k) + ")");

    DenseMatrix<T> w = b;
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    const double negligible = 1e-14 * frobenius_norm(b);
    std::size_t rank = 0;

    for (std::size_t i = 0; i < k; ++i) {
        auto ci = w.col(i);
        std::size_t piv = i;
        double best = std::abs(ci[i]);
        for (std::size_t r = i + 1; r < m; ++r) {
            const double v = std::abs(ci[r]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv != i) {
            swap_rows(w, i, piv);
            std::swap(perm[i], perm[piv]);
        }
        if (best > negligible) ++rank;
        if (best == 0.0) continue;  // column already zero below the diagonal

        const T pivot = ci[i];
        for (std::size_t r = i + 1; r < m; ++r) ci[r] /= pivot;
        const auto first = static_cast<index_t>(i + 1);
        const auto last = static_cast<index_t>(k);
#pragma omp parallel for schedule(static)
        for (index_t jj = first; jj < last; ++jj) {
            auto cj = w.col(static_cast<std::size_t>(jj));
            const T a = cj[i];
            if (a == T(0)) continue;
            for (std::size_t r = i + 1; r < m; ++r) cj[r] -= ci[r] * a;
        }
    }

    DenseMatrix<T> l(m, k);
    DenseMatrix<T> u(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        l(j, j) = T(1);
        for (std::size_t r = j + 1; r < m; ++r) l(r, j) = w(r, j);
        for (std::size_t r = 0; r <= j; ++r) u(r, j) = w(r, j);
    }
    return {Permutation(std::move(perm)), std::move(l), std::move(u), rank};
}

// ---------------------------------------------------------------------------
// LU with column pivoting
// ---------------------------------------------------------------------------

template <Scalar T>
ColPivotedLU<T> lu_col_pivot(const DenseMatrix<T>& mat) {
    const std::size_t k = mat.rows();
    const std::size_t n = mat.cols();
    if (k > n)
        throw DimensionError("lu_col_pivot: needs rows <= cols (got " + std::to_string(k) + "x" + std::to_string(n) + ")");

    DenseMatrix<T> w = mat;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (std::size_t i = 0; i < k; ++i) {
        std::size_t piv = i;
        double best = std::abs(w(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = std::abs(w(i, j));
            if (v > best) {
                best = v;
                piv = j;
            }
        }
        if (piv != i) {
            std::ranges::swap_ranges(w.col(i), w.col(piv));
            std::swap(perm[i], perm[piv]);
        }
        // A zero pivot row leaves its column as is; it only arises when M is
        // exactly rank deficient.
        if (best == 0.0) continue;

        auto ci = w.col(i);
        const T pivot = ci[i];
        for (std::size_t r = i + 1; r < k; ++r) ci[r] /= pivot;
        const auto first = static_cast<index_t>(i + 1);
        const auto last = static_cast<index_t>(n);
#pragma omp parallel for schedule(static)
        for (index_t jj = first; jj < last; ++jj) {
            auto cj = w.col(static_cast<std::size_t>(jj));
            const T a = cj[i];
            if (a == T(0)) continue;
            for (std::size_t r = i + 1; r < k; ++r) cj[r] -= ci[r] * a;
        }
    }

    DenseMatrix<T> l(k, k);
    DenseMatrix<T> u(k, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < k) {
            l(j, j) = T(1);
            for (std::size_t r = j + 1; r < k; ++r) l(r, j) = w(r, j);
        }
        for (std::size_t r = 0; r <= std::min(j, k - 1); ++r) u(r, j) = w(r, j);
    }
    return {Permutation(std::move(perm)), std::move(l), std::move(u)};
}

// ---------------------------------------------------------------------------
// Householder QR
// ---------------------------------------------------------------------------

namespace {

/// a <- (I - beta v v^*) a on rows [j, p), where v = (head, tail...).
template <Scalar T>
void apply_reflector(std::span<const T> tail, const T& head, double beta, std::span<T> a) {
    T w = conj(head) * a[0];
    for (std::size_t r = 1; r < a.size(); ++r) w += conj(tail[r]) * a[r];
    w *= beta;
    a[0] -= w * head;
    for (std::size_t r = 1; r < a.size(); ++r) a[r] -= w * tail[r];
}

}  // namespace

template <Scalar T>
HouseholderQR<T>::HouseholderQR(DenseMatrix<T> a) : qr_(std::move(a)) {
    const std::size_t p = qr_.rows();
    const std::size_t q = qr_.cols();
    if (p < q) throw DimensionError("HouseholderQR: needs rows >= cols");
    diag_.assign(q, T(0));
    beta_.assign(q, 0.0);
    vhead_.assign(q, T(1));

    for (std::size_t j = 0; j < q; ++j) {
        auto x = qr_.col(j).subspan(j);
        double norm2 = 0.0;
        for (const T& v : x) norm2 += abs2(v);
        const double xnorm = std::sqrt(norm2);
        if (xnorm == 0.0) continue;

        const T alpha = x[0];
        const double alpha_abs = std::abs(alpha);
        const T phase = alpha_abs == 0.0 ? T(1) : alpha / alpha_abs;
        const T head = alpha + phase * xnorm;
        vhead_[j] = head;
        diag_[j] = -phase * xnorm;
        beta_[j] = 2.0 / (abs2(head) + norm2 - abs2(alpha));

        const std::span<const T> tail = x;
        const auto first = static_cast<index_t>(j + 1);
        const auto last = static_cast<index_t>(q);
#pragma omp parallel for schedule(static)
        for (index_t cc = first; cc < last; ++cc)
            apply_reflector<T>(tail, head, beta_[j], qr_.col(static_cast<std::size_t>(cc)).subspan(j));
    }
}

template <Scalar T>
DenseMatrix<T> HouseholderQR<T>::r() const {
    const std::size_t q = cols();
    DenseMatrix<T> out(q, q);
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t i = 0; i < j; ++i) out(i, j) = qr_(i, j);
        out(j, j) = diag_[j];
    }
    return out;
}

template <Scalar T>
DenseMatrix<T> HouseholderQR<T>::thin_q() const {
    const std::size_t p = rows();
    const std::size_t q = cols();
    DenseMatrix<T> e(p, q);
    for (std::size_t j = 0; j < q; ++j) e(j, j) = T(1);
    for (std::size_t jr = q; jr-- > 0;) {
        if (beta_[jr] == 0.0) continue;
        const std::span<const T> tail = qr_.col(jr).subspan(jr);
        const auto first = static_cast<index_t>(jr);
        const auto last = static_cast<index_t>(q);
#pragma omp parallel for schedule(static)
        for (index_t cc = first; cc < last; ++cc)
            apply_reflector<T>(tail, vhead_[jr], beta_[jr], e.col(static_cast<std::size_t>(cc)).subspan(jr));
    }
    return e;
}

namespace {

/// Solves R x = b in place (R upper triangular, q x q).
template <Scalar T>
void solve_upper(const DenseMatrix<T>& r, std::span<T> x) {
    for (std::size_t i = x.size(); i-- > 0;) {
        x[i] /= r(i, i);
        const T xi = x[i];
        for (std::size_t t = 0; t < i; ++t) x[t] -= r(t, i) * xi;
    }
}

/// Solves R^* x = b in place.
template <Scalar T>
void solve_upper_adjoint(const DenseMatrix<T>& r, std::span<T> x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        T sum = x[i];
        for (std::size_t t = 0; t < i; ++t) sum -= conj(r(t, i)) * x[t];
        x[i] = sum / conj(r(i, i));
    }
}

template <Scalar T>
double normalize(std::vector<T>& x) {
    double n2 = 0.0;
    for (const T& v : x) n2 += abs2(v);
    const double n = std::sqrt(n2);
    if (n > 0.0 && std::isfinite(n))
        for (T& v : x) v /= n;
    return n;
}

}  // namespace

template <Scalar T>
double HouseholderQR<T>::condition_estimate() const {
    const std::size_t q = cols();
    if (q == 0) return 1.0;
    for (const T& d : diag_)
        if (d == T(0) || !is_finite(d)) return std::numeric_limits<double>::infinity();

    const DenseMatrix<T> rr = r();
    constexpr int kIterations = 30;
    CounterRng rng(0x5eed);
    std::vector<T> start(q);
    for (T& v : start) v = T(rng.gaussian());

    // sigma_max^2 from power iteration on R^* R.
    std::vector<T> x = start;
    normalize(x);
    double sigma_max2 = 0.0;
    std::vector<T> y(q);
    for (int it = 0; it < kIterations; ++it) {
        for (std::size_t i = 0; i < q; ++i) {
            T sum(0);
            for (std::size_t t = i; t < q; ++t) sum += rr(i, t) * x[t];
            y[i] = sum;
        }
        for (std::size_t t = 0; t < q; ++t) {
            T sum(0);
            for (std::size_t i = 0; i <= t; ++i) sum += conj(rr(i, t)) * y[i];
            x[t] = sum;
        }
        sigma_max2 = normalize(x);
    }

    // 1/sigma_min^2 from power iteration on (R^* R)^{-1}.
    x = start;
    normalize(x);
    double inv_sigma_min2 = 0.0;
    for (int it = 0; it < kIterations; ++it) {
        solve_upper_adjoint(rr, std::span<T>(x));
        solve_upper(rr, std::span<T>(x));
        inv_sigma_min2 = normalize(x);
        if (!std::isfinite(inv_sigma_min2)) return std::numeric_limits<double>::infinity();
    }
    return std::sqrt(sigma_max2 * inv_sigma_min2);
}

template <Scalar T>
DenseMatrix<T> orthonormal_basis(const DenseMatrix<T>& a) {
    return HouseholderQR<T>(a).thin_q();
}

template <Scalar T>
DenseMatrix<T> left_pseudo_inverse(const DenseMatrix<T>& m) {
    if (m.rows() < m.cols())
        throw DimensionError("left_pseudo_inverse: needs rows >= cols (got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ")");
    const HouseholderQR<T> qr(m);
    const double cond = qr.condition_estimate();
    if (!(cond < 1e10))
        throw SingularityError("left_pseudo_inverse: matrix is numerically rank deficient (condition estimate " +
                                   std::to_string(cond) + ")",
                               cond);
    const DenseMatrix<T> r = qr.r();
    DenseMatrix<T> x = qr.thin_q().adjoint();  // q x p
    const auto p = static_cast<index_t>(x.cols());
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < p; ++j) solve_upper(r, x.col(static_cast<std::size_t>(j)));
    return x;
}

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

template <Scalar T>
std::vector<double> singular_values(const DenseMatrix<T>& a) {
    using EMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.rows() == 0 || a.cols() == 0) return {};
    const Eigen::Map<const EMatrix> view(a.data(), static_cast<Eigen::Index>(a.rows()),
                                         static_cast<Eigen::Index>(a.cols()));
    const Eigen::BDCSVD<EMatrix> svd(view);
    const auto& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double tail_energy(std::span<const double> sigma, std::size_t r) {
    if (r > sigma.size())
        throw ParameterError("tail_energy: r=" + std::to_string(r) + " exceeds spectrum length " +
                             std::to_string(sigma.size()));
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (!(sigma[i] >= 0.0)) throw ParameterError("tail_energy: singular values must be nonnegative");
        if (i > 0 && sigma[i] > sigma[i - 1]) throw ParameterError("tail_energy: spectrum is not descending");
    }
    double sum = 0.0;
    for (std::size_t i = sigma.size(); i-- > r;) sum += sigma[i] * sigma[i];
    return std::sqrt(sum);
}

#define SRLU_INSTANTIATE(T)                                                         \
    template PivotedLU<T> lu_row_pivot(const DenseMatrix<T>&);                      \
    template ColPivotedLU<T> lu_col_pivot(const DenseMatrix<T>&);                   \
    template class HouseholderQR<T>;                                                \
    template DenseMatrix<T> orthonormal_basis(const DenseMatrix<T>&);               \
    template DenseMatrix<T> left_pseudo_inverse(const DenseMatrix<T>&);             \
    template std::vector<double> singular_values(const DenseMatrix<T>&);

SRLU_INSTANTIATE(double)
SRLU_INSTANTIATE(cplx)

#undef SRLU_INSTANTIATE

}  // namespace srlu
