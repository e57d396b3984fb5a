#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "srlu/matrix.hpp"

namespace srlu {

/// P * B = L * U for an m x k input (m >= k).
template <Scalar T>
struct PivotedLU {
    Permutation p;    ///< row permutation, size m
    DenseMatrix<T> l; ///< m x k, unit lower trapezoidal, |l_ij| <= 1 below the diagonal
    DenseMatrix<T> u; ///< k x k, upper triangular
    std::size_t rank; ///< pivots larger than 1e-14 * ||B||_F
};

/// M * Q = L * U for a k x n input (k <= n).
template <Scalar T>
struct ColPivotedLU {
    Permutation q;    ///< column permutation, size n
    DenseMatrix<T> l; ///< k x k, unit lower triangular
    DenseMatrix<T> u; ///< k x n, upper trapezoidal, |u_ij| <= |u_ii| for j > i
};

/// Gaussian elimination with partial (row) pivoting. The pivot is the
/// largest-modulus entry of the working column, ties to the smallest row index.
/// Negligible pivots do not stop the elimination; an exactly zero pivot column
/// leaves its multipliers at zero.
template <Scalar T>
PivotedLU<T> lu_row_pivot(const DenseMatrix<T>& b);

/// Gaussian elimination with right (column) partial pivoting: at step i the
/// column maximizing |M_work(i, j)| over the remaining columns is swapped in,
/// ties to the smallest column index.
template <Scalar T>
ColPivotedLU<T> lu_col_pivot(const DenseMatrix<T>& m);

/// Householder QR of a p x q matrix, p >= q. Reflectors are Hermitian, so
/// Q = H_0 H_1 ... H_{q-1}.
template <Scalar T>
class HouseholderQR {
public:
    explicit HouseholderQR(DenseMatrix<T> a);

    std::size_t rows() const noexcept { return qr_.rows(); }
    std::size_t cols() const noexcept { return qr_.cols(); }

    /// q x q upper triangular factor.
    DenseMatrix<T> r() const;
    /// p x q factor with orthonormal columns.
    DenseMatrix<T> thin_q() const;
    /// sigma_max(R) / sigma_min(R) by power and inverse power iteration;
    /// infinity when R has a zero or non-finite diagonal entry.
    double condition_estimate() const;

private:
    DenseMatrix<T> qr_;        // R above the diagonal, reflector tails below
    std::vector<T> diag_;      // diagonal of R
    std::vector<double> beta_; // H_j = I - beta_j v_j v_j^*, v_j(j) = vhead_[j]
    std::vector<T> vhead_;
};

/// Orthonormal basis of range(A) for tall A (p >= q), via Householder QR.
template <Scalar T>
DenseMatrix<T> orthonormal_basis(const DenseMatrix<T>& a);

/// Left pseudo-inverse M^+ = R^{-1} Q^* of a tall full-column-rank matrix.
/// Throws SingularityError (carrying the condition estimate) when
/// sigma_min / sigma_max <= 1e-10.
template <Scalar T>
DenseMatrix<T> left_pseudo_inverse(const DenseMatrix<T>& m);

/// Full singular spectrum, descending (min(m, n) values).
template <Scalar T>
std::vector<double> singular_values(const DenseMatrix<T>& a);

/// sqrt(sum_{i > r} sigma_i^2) for a descending spectrum.
double tail_energy(std::span<const double> sigma, std::size_t r);

}  // namespace srlu
