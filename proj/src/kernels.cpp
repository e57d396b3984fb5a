#include "srlu/kernels.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

#include "srlu/transforms.hpp"

namespace srlu::kernels {

namespace {

using index_t = std::ptrdiff_t;

constexpr std::size_t kGemmPanel = 4;

void require(bool ok, const char* what) {
    if (!ok) throw DimensionError(what);
}

}  // namespace

template <Scalar T>
DenseMatrix<T> gemm(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    require(a.cols() == b.rows(), "matmul: A.cols != B.rows");
    const std::size_t m = a.rows();
    const std::size_t p = a.cols();
    const std::size_t n = b.cols();
    DenseMatrix<T> c(m, n);
    const auto panels = static_cast<index_t>((n + kGemmPanel - 1) / kGemmPanel);

    // Each task owns a panel of up to four output columns and streams A once
    // per panel.
#pragma omp parallel for schedule(static)
    for (index_t panel = 0; panel < panels; ++panel) {
        const std::size_t j0 = static_cast<std::size_t>(panel) * kGemmPanel;
        const std::size_t width = std::min(kGemmPanel, n - j0);
        if (width == kGemmPanel) {
            T* c0 = c.col(j0).data();
            T* c1 = c.col(j0 + 1).data();
            T* c2 = c.col(j0 + 2).data();
            T* c3 = c.col(j0 + 3).data();
            for (std::size_t q = 0; q < p; ++q) {
                const T* aq = a.col(q).data();
                const T b0 = b(q, j0), b1 = b(q, j0 + 1), b2 = b(q, j0 + 2), b3 = b(q, j0 + 3);
                for (std::size_t i = 0; i < m; ++i) {
                    const T x = aq[i];
                    c0[i] += x * b0;
                    c1[i] += x * b1;
                    c2[i] += x * b2;
                    c3[i] += x * b3;
                }
            }
        } else {
            for (std::size_t j = j0; j < j0 + width; ++j) {
                T* cj = c.col(j).data();
                for (std::size_t q = 0; q < p; ++q) {
                    const T* aq = a.col(q).data();
                    const T bq = b(q, j);
                    for (std::size_t i = 0; i < m; ++i) cj[i] += aq[i] * bq;
                }
            }
        }
    }
    return c;
}

template <Scalar T>
DenseMatrix<T> sparse_dense(const SparseMatrix<T>& a, const DenseMatrix<T>& b) {
    require(a.cols() == b.rows(), "matmul: A.cols != B.rows");
    DenseMatrix<T> c(a.rows(), b.cols());
    const auto n = static_cast<index_t>(b.cols());
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < n; ++j) {
        auto cj = c.col(static_cast<std::size_t>(j));
        auto bj = b.col(static_cast<std::size_t>(j));
        for (std::size_t q = 0; q < a.cols(); ++q) {
            const T bq = bj[q];
            auto rows = a.col_rows(q);
            auto vals = a.col_values(q);
            for (std::size_t t = 0; t < rows.size(); ++t) cj[rows[t]] += vals[t] * bq;
        }
    }
    return c;
}

template <Scalar T>
DenseMatrix<T> dense_sparse(const DenseMatrix<T>& a, const SparseMatrix<T>& b) {
    require(a.cols() == b.rows(), "matmul: A.cols != B.rows");
    const std::size_t m = a.rows();
    DenseMatrix<T> c(m, b.cols());
    const auto n = static_cast<index_t>(b.cols());
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < n; ++j) {
        T* cj = c.col(static_cast<std::size_t>(j)).data();
        auto rows = b.col_rows(static_cast<std::size_t>(j));
        auto vals = b.col_values(static_cast<std::size_t>(j));
        for (std::size_t t = 0; t < rows.size(); ++t) {
            const T* aq = a.col(rows[t]).data();
            const T v = vals[t];
            for (std::size_t i = 0; i < m; ++i) cj[i] += aq[i] * v;
        }
    }
    return c;
}

template <Scalar T>
DenseMatrix<T> sem_adjoint_right(const DenseMatrix<T>& a, const SparseEmbedding& s) {
    require(a.cols() == s.in_dim(), "apply_sem_adjoint_right: A.cols != S.in_dim");
    const std::size_t m = a.rows();
    DenseMatrix<T> out(m, s.out_dim());
    const auto ptr = s.bucket_ptr();
    const auto cols = s.bucket_cols();
    const auto sign = s.sign();
    const auto l = static_cast<index_t>(s.out_dim());
#pragma omp parallel for schedule(static)
    for (index_t t = 0; t < l; ++t) {
        T* dst = out.col(static_cast<std::size_t>(t)).data();
        for (std::size_t p = ptr[static_cast<std::size_t>(t)]; p < ptr[static_cast<std::size_t>(t) + 1]; ++p) {
            const std::size_t j = cols[p];
            const T* src = a.col(j).data();
            if (sign[j] > 0) {
                for (std::size_t i = 0; i < m; ++i) dst[i] += src[i];
            } else {
                for (std::size_t i = 0; i < m; ++i) dst[i] -= src[i];
            }
        }
    }
    return out;
}

template <Scalar T>
DenseMatrix<T> sem_adjoint_right(const SparseMatrix<T>& a, const SparseEmbedding& s) {
    require(a.cols() == s.in_dim(), "apply_sem_adjoint_right: A.cols != S.in_dim");
    DenseMatrix<T> out(a.rows(), s.out_dim());
    const auto ptr = s.bucket_ptr();
    const auto cols = s.bucket_cols();
    const auto sign = s.sign();
    const auto l = static_cast<index_t>(s.out_dim());
#pragma omp parallel for schedule(static)
    for (index_t t = 0; t < l; ++t) {
        auto dst = out.col(static_cast<std::size_t>(t));
        for (std::size_t p = ptr[static_cast<std::size_t>(t)]; p < ptr[static_cast<std::size_t>(t) + 1]; ++p) {
            const std::size_t j = cols[p];
            const double sg = sign[j];
            auto rows = a.col_rows(j);
            auto vals = a.col_values(j);
            for (std::size_t e = 0; e < rows.size(); ++e) dst[rows[e]] += sg * vals[e];
        }
    }
    return out;
}

template <Scalar T>
DenseMatrix<T> sem_left(const SparseEmbedding& s, const DenseMatrix<T>& a) {
    require(a.rows() == s.in_dim(), "apply_sem_left: A.rows != S.in_dim");
    DenseMatrix<T> out(s.out_dim(), a.cols());
    const auto row_of = s.row_of();
    const auto sign = s.sign();
    const std::size_t m = a.rows();
    const auto n = static_cast<index_t>(a.cols());
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < n; ++j) {
        const T* src = a.col(static_cast<std::size_t>(j)).data();
        T* dst = out.col(static_cast<std::size_t>(j)).data();
        for (std::size_t i = 0; i < m; ++i) dst[row_of[i]] += static_cast<double>(sign[i]) * src[i];
    }
    return out;
}

template <Scalar T>
DenseMatrix<T> sem_left(const SparseEmbedding& s, const SparseMatrix<T>& a) {
    require(a.rows() == s.in_dim(), "apply_sem_left: A.rows != S.in_dim");
    DenseMatrix<T> out(s.out_dim(), a.cols());
    const auto row_of = s.row_of();
    const auto sign = s.sign();
    const auto n = static_cast<index_t>(a.cols());
#pragma omp parallel for schedule(static)
    for (index_t j = 0; j < n; ++j) {
        T* dst = out.col(static_cast<std::size_t>(j)).data();
        auto rows = a.col_rows(static_cast<std::size_t>(j));
        auto vals = a.col_values(static_cast<std::size_t>(j));
        for (std::size_t e = 0; e < rows.size(); ++e)
            dst[row_of[rows[e]]] += static_cast<double>(sign[rows[e]]) * vals[e];
    }
    return out;
}

namespace {

/// Applies phase, zero padding and the unitary transform to `buf` in place.
/// `adjoint` selects conj(phase) and the inverse transform (rows of B Pi^*).
template <Scalar T>
class TransformRunner {
public:
    explicit TransformRunner(const FastTransformSketch& pi)
        : pi_(pi), plan_(pi.kind() == TransformKind::fourier ? pi.pad() : 1) {}

    std::size_t scratch_size() const noexcept { return plan_.scratch_size(); }

    void run(std::span<T> buf, bool adjoint, std::span<cplx> scratch) const {
        if constexpr (std::same_as<T, double>) {
            walsh_hadamard(buf);
        } else {
            plan_.execute(buf, adjoint ? TransformDirection::inverse : TransformDirection::forward, scratch);
        }
    }

    T phase(std::size_t j, bool adjoint) const {
        if constexpr (std::same_as<T, double>) {
            return pi_.phase()[j].real();
        } else {
            return adjoint ? std::conj(pi_.phase()[j]) : pi_.phase()[j];
        }
    }

private:
    const FastTransformSketch& pi_;
    FftPlan plan_;
};

}  // namespace

template <Scalar T>
DenseMatrix<T> fast_adjoint_right(const DenseMatrix<T>& b, const FastTransformSketch& pi) {
    require(b.cols() == pi.in_dim(), "apply_fast_adjoint_right: B.cols != Pi.in_dim");
    pi.check_field<T>();
    const TransformRunner<T> runner(pi);
    const std::size_t l = pi.in_dim();
    const std::size_t pad = pi.pad();
    const auto samples = pi.sample_idx();
    const double scale = pi.scale();
    DenseMatrix<T> out(b.rows(), pi.out_dim());
    const auto m = static_cast<index_t>(b.rows());
#pragma omp parallel
    {
        std::vector<T> buf(pad);
        std::vector<cplx> scratch(runner.scratch_size());
#pragma omp for schedule(static)
        for (index_t ii = 0; ii < m; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            for (std::size_t j = 0; j < l; ++j) buf[j] = b(i, j) * runner.phase(j, true);
            std::fill(buf.begin() + static_cast<index_t>(l), buf.end(), T(0));
            runner.run(buf, true, scratch);
            for (std::size_t t = 0; t < samples.size(); ++t) out(i, t) = scale * buf[samples[t]];
        }
    }
    return out;
}

template <Scalar T>
DenseMatrix<T> fast_left(const FastTransformSketch& pi, const DenseMatrix<T>& y) {
    require(y.rows() == pi.in_dim(), "apply_fast_left: Y.rows != Pi.in_dim");
    pi.check_field<T>();
    const TransformRunner<T> runner(pi);
    const std::size_t l = pi.in_dim();
    const std::size_t pad = pi.pad();
    const auto samples = pi.sample_idx();
    const double scale = pi.scale();
    DenseMatrix<T> out(pi.out_dim(), y.cols());
    const auto n = static_cast<index_t>(y.cols());
#pragma omp parallel
    {
        std::vector<T> buf(pad);
        std::vector<cplx> scratch(runner.scratch_size());
#pragma omp for schedule(static)
        for (index_t jj = 0; jj < n; ++jj) {
            const auto j = static_cast<std::size_t>(jj);
            auto src = y.col(j);
            for (std::size_t i = 0; i < l; ++i) buf[i] = src[i] * runner.phase(i, false);
            std::fill(buf.begin() + static_cast<index_t>(l), buf.end(), T(0));
            runner.run(buf, false, scratch);
            auto dst = out.col(j);
            for (std::size_t t = 0; t < samples.size(); ++t) dst[t] = scale * buf[samples[t]];
        }
    }
    return out;
}

#define SRLU_INSTANTIATE(T)                                                                          \
    template DenseMatrix<T> gemm(const DenseMatrix<T>&, const DenseMatrix<T>&);                      \
    template DenseMatrix<T> sparse_dense(const SparseMatrix<T>&, const DenseMatrix<T>&);             \
    template DenseMatrix<T> dense_sparse(const DenseMatrix<T>&, const SparseMatrix<T>&);             \
    template DenseMatrix<T> sem_adjoint_right(const DenseMatrix<T>&, const SparseEmbedding&);        \
    template DenseMatrix<T> sem_adjoint_right(const SparseMatrix<T>&, const SparseEmbedding&);       \
    template DenseMatrix<T> sem_left(const SparseEmbedding&, const DenseMatrix<T>&);                 \
    template DenseMatrix<T> sem_left(const SparseEmbedding&, const SparseMatrix<T>&);                \
    template DenseMatrix<T> fast_adjoint_right(const DenseMatrix<T>&, const FastTransformSketch&);   \
    template DenseMatrix<T> fast_left(const FastTransformSketch&, const DenseMatrix<T>&);

SRLU_INSTANTIATE(double)
SRLU_INSTANTIATE(cplx)

#undef SRLU_INSTANTIATE

}  // namespace srlu::kernels
