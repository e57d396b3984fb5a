#include "srlu/randlu.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <string>

#include "srlu/sketch.hpp"

namespace srlu {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

std::size_t ceil_size(double x) {
    if (!std::isfinite(x) || x < 0.0 || x > 1e15) throw ParameterError("sketch size out of range");
    return static_cast<std::size_t>(std::ceil(x));
}

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

constexpr int kMaxResamples = 3;

template <class Matrix>
void check_input(const Matrix& a, const RandLuParams& params) {
    using T = typename Matrix::value_type;
    if (params.field != field_of<T>)
        throw FieldError("params field is " + std::string(to_string(params.field)) + " but the matrix is " +
                         std::string(to_string(field_of<T>)));
    params.validate(a.rows(), a.cols());
}

struct SparseSketches {
    template <class Matrix>
    static DenseMatrix<typename Matrix::value_type> range(const Matrix& a, const RandLuParams& prm, std::uint64_t seed) {
        using T = typename Matrix::value_type;
        const auto omega = build_composite(transform_kind_for<T>, prm.k1, prm.l1, a.cols(), seed);
        return apply_sketch_right(a, omega);
    }

    /// Returns (Omega_2 L1, Omega_2 P A).
    template <class Matrix, Scalar T>
    static std::pair<DenseMatrix<T>, DenseMatrix<T>> project(const Matrix& pa, const DenseMatrix<T>& l1,
                                                             const RandLuParams& prm, std::uint64_t seed) {
        const auto omega = build_composite(transform_kind_for<T>, prm.k2, prm.l2, pa.rows(), seed);
        return {apply_sketch_left(omega, l1), apply_sketch_left(omega, pa)};
    }
};

struct GaussianSketches {
    template <class Matrix>
    static DenseMatrix<typename Matrix::value_type> range(const Matrix& a, const RandLuParams& prm, std::uint64_t seed) {
        using T = typename Matrix::value_type;
        const auto omega = gaussian_matrix<T>(prm.k1, a.cols(), seed);
        return matmul(a, omega.adjoint());
    }

    template <class Matrix, Scalar T>
    static std::pair<DenseMatrix<T>, DenseMatrix<T>> project(const Matrix& pa, const DenseMatrix<T>& l1,
                                                             const RandLuParams& prm, std::uint64_t seed) {
        const auto omega = gaussian_matrix<T>(prm.k2, pa.rows(), seed);
        return {matmul(omega, l1), matmul(omega, pa)};
    }
};

template <class Sketches, class Matrix>
RandLuResult<typename Matrix::value_type> randomized_lu(const Matrix& a, const RandLuParams& params) {
    using T = typename Matrix::value_type;
    check_input(a, params);
    const std::size_t n = a.cols();

    StageTimes times;
    Stopwatch total;
    for (int attempt = 0;; ++attempt) {
        const std::uint64_t seed1 = params.seed + 2 * static_cast<std::uint64_t>(attempt);
        const std::uint64_t seed2 = seed1 + 1;
        Stopwatch clock;

        const DenseMatrix<T> b = Sketches::range(a, params, seed1);
        times.sketch1 += clock.lap();

        auto lu1 = lu_row_pivot(b);
        times.lu1 += clock.lap();

        if (frobenius_norm(b) == 0.0) {
            // A is zero: any Omega_2 L1 would be singular, and L1 * 0 is exact.
            times.total = total.lap();
            return {std::move(lu1.p), Permutation::identity(n), std::move(lu1.l), DenseMatrix<T>(params.k1, n),
                    times, attempt};
        }

        const auto pa = permute_rows(lu1.p, a);
        auto [omega_l1, omega_pa] = Sketches::project(pa, lu1.l, params, seed2);
        times.sketch2 += clock.lap();

        DenseMatrix<T> w(0, 0);
        try {
            w = left_pseudo_inverse(omega_l1);
        } catch (const SingularityError& e) {
            times.pinv += clock.lap();
            if (attempt >= kMaxResamples)
                throw NumericalError("randomized LU: Omega_2 L1 stayed singular after " + std::to_string(kMaxResamples) +
                                     " resamples (condition estimate " + std::to_string(e.condition_estimate()) + ")");
            std::clog << "srlu: Omega_2 L1 singular (condition estimate " << e.condition_estimate()
                      << "), resampling sketches (attempt " << attempt + 1 << ")\n";
            continue;
        }
        const DenseMatrix<T> m = matmul(w, omega_pa);
        times.pinv += clock.lap();

        auto lu2 = lu_col_pivot(m);
        DenseMatrix<T> l = matmul(lu1.l, lu2.l);
        times.lu2 += clock.lap();
        times.total = total.lap();
        return {std::move(lu1.p), std::move(lu2.q), std::move(l), std::move(lu2.u), times, attempt};
    }
}

}  // namespace

void RandLuParams::validate(std::size_t m, std::size_t n) const {
    if (m == 0 || n == 0) throw DimensionError("randomized LU: empty matrix");
    if (r < 1) throw ParameterError("r must be at least 1");
    if (k1 < r) throw ParameterError("k1=" + str(k1) + " must be >= r=" + str(r));
    if (k2 < k1) throw ParameterError("k2=" + str(k2) + " must be >= k1=" + str(k1));
    if (l1 <= k1) throw ParameterError("l1=" + str(l1) + " must exceed k1=" + str(k1));
    if (l1 > n) throw ParameterError("l1=" + str(l1) + " exceeds n=" + str(n));
    if (l2 <= k2) throw ParameterError("l2=" + str(l2) + " must exceed k2=" + str(k2));
    if (l2 > m) throw ParameterError("l2=" + str(l2) + " exceeds m=" + str(m));
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
}

double theoretical_l2_bound(std::size_t r, double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
    const double rr = static_cast<double>(r);
    const double g = 2.0 * epsilon - epsilon * epsilon;
    return (rr * rr + rr) / (delta * g * g);
}

double theoretical_k2_bound(std::size_t r, std::size_t l) {
    if (r < 1 || l < 1) throw ParameterError("theoretical_k2_bound: r and l must be positive");
    const double rr = static_cast<double>(r);
    const double t = std::sqrt(rr) + std::sqrt(8.0 * std::log(rr * static_cast<double>(l)));
    return 4.0 * t * t * std::log(rr);
}

RandLuParams default_params(std::size_t r, std::size_t m, std::size_t n, Field field, std::uint64_t seed,
                            SizingMode mode, double epsilon, double delta) {
    if (r < 1) throw ParameterError("r must be at least 1");
    RandLuParams p;
    p.r = r;
    p.epsilon = epsilon;
    p.delta = delta;
    p.seed = seed;
    p.field = field;

    if (mode == SizingMode::practical) {
        p.k1 = r + 8;
        p.k2 = p.k1 + 8;
        if (p.k1 + 1 > n)
            throw ParameterError("r=" + str(r) + " too large: k1=" + str(p.k1) + " needs n > k1 (n=" + str(n) + ")");
        if (p.k2 + 1 > m)
            throw ParameterError("r=" + str(r) + " too large: k2=" + str(p.k2) + " needs m > k2 (m=" + str(m) + ")");
        p.l1 = std::min(n, 4 * p.k1);
        p.l2 = std::min(m, 4 * p.k2);
    } else {
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
        const double re = static_cast<double>(r) / epsilon;
        const double lre = std::log(re);
        p.k1 = std::max(r, ceil_size(re * lre));
        p.l1 = ceil_size(static_cast<double>(r * r) * std::pow(lre, 6) + re);
        p.l2 = ceil_size(theoretical_l2_bound(r, epsilon, delta));
        p.k2 = ceil_size(theoretical_k2_bound(r, p.l2));
        while (p.k2 >= p.l2) {
            p.l2 = 2 * p.k2;
            p.k2 = ceil_size(theoretical_k2_bound(r, p.l2));
        }
        p.k2 = std::max(p.k2, p.k1);
        p.l1 = std::max(std::min(p.l1, n), std::min(n, p.k1 + 1));
        p.l2 = std::min(p.l2, m);
    }
    p.validate(m, n);
    return p;
}

double theoretical_error_factor(double epsilon, std::size_t n, std::size_t k2) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
    return 1.48 * (1.0 + epsilon) * (norm_bound_C(n, k2) / (0.4 * (1.0 - epsilon)) + 1.0);
}

template <class Matrix>
RandLuResult<typename Matrix::value_type> sparse_randomized_lu(const Matrix& a, const RandLuParams& params) {
    return randomized_lu<SparseSketches>(a, params);
}

template <class Matrix>
RandLuResult<typename Matrix::value_type> gaussian_randomized_lu(const Matrix& a, const RandLuParams& params) {
    return randomized_lu<GaussianSketches>(a, params);
}

template <class Matrix>
DenseMatrix<typename Matrix::value_type> sketch_range(const Matrix& a, const RandLuParams& params) {
    check_input(a, params);
    return SparseSketches::range(a, params, params.seed);
}

template <class Matrix>
double approximation_error(const Matrix& a, const RandLuResult<typename Matrix::value_type>& res) {
    using T = typename Matrix::value_type;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (res.l.rows() != m || res.u.cols() != n || res.l.cols() != res.u.rows() || res.p.size() != m ||
        res.q.size() != n)
        throw DimensionError("approximation_error: factor shapes do not match A");
    const Permutation pinv = res.p.inverse();

    constexpr std::size_t kBlock = 64;
    double sum = 0.0;
    for (std::size_t j0 = 0; j0 < n; j0 += kBlock) {
        const std::size_t count = std::min(kBlock, n - j0);
        DenseMatrix<T> diff = matmul(res.l, res.u.block_cols(j0, count));
        for (std::size_t c = 0; c < count; ++c) {
            auto col = diff.col(c);
            const std::size_t src = res.q[j0 + c];
            if constexpr (std::same_as<Matrix, SparseMatrix<T>>) {
                auto rows = a.col_rows(src);
                auto vals = a.col_values(src);
                for (std::size_t t = 0; t < rows.size(); ++t) col[pinv[rows[t]]] -= vals[t];
            } else {
                for (std::size_t i = 0; i < m; ++i) col[i] -= a(res.p[i], src);
            }
            for (const T& v : col) sum += abs2(v);
        }
    }
    return std::sqrt(sum);
}

#define SRLU_INSTANTIATE(M)                                                                                        \
    template RandLuResult<M::value_type> sparse_randomized_lu(const M&, const RandLuParams&);                      \
    template RandLuResult<M::value_type> gaussian_randomized_lu(const M&, const RandLuParams&);                    \
    template DenseMatrix<M::value_type> sketch_range(const M&, const RandLuParams&);                               \
    template double approximation_error(const M&, const RandLuResult<M::value_type>&);

SRLU_INSTANTIATE(DenseMatrix<double>)
SRLU_INSTANTIATE(DenseMatrix<cplx>)
SRLU_INSTANTIATE(SparseMatrix<double>)
SRLU_INSTANTIATE(SparseMatrix<cplx>)

#undef SRLU_INSTANTIATE

}  // namespace srlu
