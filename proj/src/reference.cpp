#include "srlu/reference.hpp"

#include <vector>

#include "srlu/transforms.hpp"

namespace srlu::reference {

template <Scalar T>
DenseMatrix<T> gemm(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: A.cols != B.rows");
    DenseMatrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T sum(0);
            for (std::size_t q = 0; q < a.cols(); ++q) sum += a(i, q) * b(q, j);
            c(i, j) = sum;
        }
    return c;
}

template <Scalar T>
DenseMatrix<T> sparse_dense(const SparseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: A.cols != B.rows");
    DenseMatrix<T> c(a.rows(), b.cols());
    for (std::size_t q = 0; q < a.cols(); ++q) {
        auto rows = a.col_rows(q);
        auto vals = a.col_values(q);
        for (std::size_t t = 0; t < rows.size(); ++t)
            for (std::size_t j = 0; j < b.cols(); ++j) c(rows[t], j) += vals[t] * b(q, j);
    }
    return c;
}

template <Scalar T>
DenseMatrix<T> dense_sparse(const DenseMatrix<T>& a, const SparseMatrix<T>& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: A.cols != B.rows");
    DenseMatrix<T> c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto rows = b.col_rows(j);
        auto vals = b.col_values(j);
        for (std::size_t t = 0; t < rows.size(); ++t)
            for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += a(i, rows[t]) * vals[t];
    }
    return c;
}

template <Scalar T>
DenseMatrix<T> sem_adjoint_right(const DenseMatrix<T>& a, const SparseEmbedding& s) {
    if (a.cols() != s.in_dim()) throw DimensionError("apply_sem_adjoint_right: A.cols != S.in_dim");
    DenseMatrix<T> out(a.rows(), s.out_dim());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            out(i, s.row_of()[j]) += static_cast<double>(s.sign()[j]) * a(i, j);
    return out;
}

template <Scalar T>
DenseMatrix<T> sem_adjoint_right(const SparseMatrix<T>& a, const SparseEmbedding& s) {
    if (a.cols() != s.in_dim()) throw DimensionError("apply_sem_adjoint_right: A.cols != S.in_dim");
    DenseMatrix<T> out(a.rows(), s.out_dim());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        auto rows = a.col_rows(j);
        auto vals = a.col_values(j);
        for (std::size_t t = 0; t < rows.size(); ++t)
            out(rows[t], s.row_of()[j]) += static_cast<double>(s.sign()[j]) * vals[t];
    }
    return out;
}

template <Scalar T>
DenseMatrix<T> sem_left(const SparseEmbedding& s, const DenseMatrix<T>& a) {
    if (a.rows() != s.in_dim()) throw DimensionError("apply_sem_left: A.rows != S.in_dim");
    DenseMatrix<T> out(s.out_dim(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(s.row_of()[i], j) += static_cast<double>(s.sign()[i]) * a(i, j);
    return out;
}

template <Scalar T>
DenseMatrix<T> sem_left(const SparseEmbedding& s, const SparseMatrix<T>& a) {
    return sem_left(s, a.to_dense());
}

namespace {

template <Scalar T>
void transform(std::span<T> buf, bool inverse, const FftPlan& plan, std::vector<cplx>& scratch) {
    if constexpr (std::same_as<T, double>) {
        walsh_hadamard(buf);
    } else {
        plan.execute(buf, inverse ? TransformDirection::inverse : TransformDirection::forward, scratch);
    }
}

template <Scalar T>
T phase_of(const FastTransformSketch& pi, std::size_t j, bool adjoint) {
    if constexpr (std::same_as<T, double>) {
        return pi.phase()[j].real();
    } else {
        return adjoint ? std::conj(pi.phase()[j]) : pi.phase()[j];
    }
}

}  // namespace

template <Scalar T>
DenseMatrix<T> fast_adjoint_right(const DenseMatrix<T>& b, const FastTransformSketch& pi) {
    pi.check_field<T>();
    if (b.cols() != pi.in_dim()) throw DimensionError("apply_fast_adjoint_right: B.cols != Pi.in_dim");
    const FftPlan plan(pi.kind() == TransformKind::fourier ? pi.pad() : 1);
    std::vector<cplx> scratch(plan.scratch_size());
    DenseMatrix<T> out(b.rows(), pi.out_dim());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        std::vector<T> buf(pi.pad(), T(0));
        for (std::size_t j = 0; j < b.cols(); ++j) buf[j] = b(i, j) * phase_of<T>(pi, j, true);
        transform<T>(buf, true, plan, scratch);
        for (std::size_t t = 0; t < pi.out_dim(); ++t) out(i, t) = pi.scale() * buf[pi.sample_idx()[t]];
    }
    return out;
}

template <Scalar T>
DenseMatrix<T> fast_left(const FastTransformSketch& pi, const DenseMatrix<T>& y) {
    pi.check_field<T>();
    if (y.rows() != pi.in_dim()) throw DimensionError("apply_fast_left: Y.rows != Pi.in_dim");
    const FftPlan plan(pi.kind() == TransformKind::fourier ? pi.pad() : 1);
    std::vector<cplx> scratch(plan.scratch_size());
    DenseMatrix<T> out(pi.out_dim(), y.cols());
    for (std::size_t j = 0; j < y.cols(); ++j) {
        std::vector<T> buf(pi.pad(), T(0));
        for (std::size_t i = 0; i < y.rows(); ++i) buf[i] = y(i, j) * phase_of<T>(pi, i, false);
        transform<T>(buf, false, plan, scratch);
        for (std::size_t t = 0; t < pi.out_dim(); ++t) out(t, j) = pi.scale() * buf[pi.sample_idx()[t]];
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

}  // namespace srlu::reference
