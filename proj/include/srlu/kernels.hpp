#pragma once

// OpenMP kernels behind matmul and the sketch applications. Work is split over
// independent output columns (or rows, for the row-wise transform), each
// computed by exactly one thread in a fixed order, so the output does not
// depend on the thread count. reference.hpp holds the serial counterparts the
// tests and the benchmark compare against.

#include "srlu/matrix.hpp"
#include "srlu/sketch.hpp"

namespace srlu::kernels {

template <Scalar T>
DenseMatrix<T> gemm(const DenseMatrix<T>& a, const DenseMatrix<T>& b);
template <Scalar T>
DenseMatrix<T> sparse_dense(const SparseMatrix<T>& a, const DenseMatrix<T>& b);
template <Scalar T>
DenseMatrix<T> dense_sparse(const DenseMatrix<T>& a, const SparseMatrix<T>& b);

template <Scalar T>
DenseMatrix<T> sem_adjoint_right(const DenseMatrix<T>& a, const SparseEmbedding& s);
template <Scalar T>
DenseMatrix<T> sem_adjoint_right(const SparseMatrix<T>& a, const SparseEmbedding& s);
template <Scalar T>
DenseMatrix<T> sem_left(const SparseEmbedding& s, const DenseMatrix<T>& a);
template <Scalar T>
DenseMatrix<T> sem_left(const SparseEmbedding& s, const SparseMatrix<T>& a);

template <Scalar T>
DenseMatrix<T> fast_adjoint_right(const DenseMatrix<T>& b, const FastTransformSketch& pi);
template <Scalar T>
DenseMatrix<T> fast_left(const FastTransformSketch& pi, const DenseMatrix<T>& y);

}  // namespace srlu::kernels
