#pragma once

#include <complex>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "srlu/error.hpp"

namespace srlu {

using cplx = std::complex<double>;

enum class Field { real64, complex128 };

std::string_view to_string(Field field) noexcept;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, cplx>;

template <Scalar T>
inline constexpr Field field_of = std::same_as<T, double> ? Field::real64 : Field::complex128;

inline double conj(double x) noexcept { return x; }
inline cplx conj(const cplx& x) noexcept { return std::conj(x); }
inline double abs2(double x) noexcept { return x * x; }
inline double abs2(const cplx& x) noexcept { return std::norm(x); }

bool is_finite(double x) noexcept;
bool is_finite(const cplx& x) noexcept;

// ---------------------------------------------------------------------------
// Dense storage
// ---------------------------------------------------------------------------

/// Column-major dense matrix over real64 or complex128.
template <Scalar T>
class DenseMatrix {
public:
    using value_type = T;

    DenseMatrix() = default;

    /// Zero-initialized rows x cols matrix.
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    /// Takes ownership of column-major `values`. Rejects wrong lengths and NaN/Inf.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> values);

    /// Row-wise literal, convenient for small fixed matrices.
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<T>> rows);
    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    T& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
    const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

    std::span<T> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
    std::span<const T> col(std::size_t j) const noexcept { return {data_.data() + j * rows_, rows_}; }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }
    T* data() noexcept { return data_.data(); }
    const T* data() const noexcept { return data_.data(); }

    /// Throws PreconditionError if any entry is NaN or infinite.
    void check_finite() const;

    /// Conjugate transpose.
    DenseMatrix adjoint() const;

    /// Columns [first, first+count) as a new matrix.
    DenseMatrix block_cols(std::size_t first, std::size_t count) const;

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

// ---------------------------------------------------------------------------
// Sparse storage
// ---------------------------------------------------------------------------

template <Scalar T>
struct Triplet {
    std::size_t row;
    std::size_t col;
    T value;
};

/// Compressed sparse column matrix.
///
/// Column pointers are nondecreasing with col_ptr.back() == nnz; row indices in
/// each column are strictly increasing and < rows. Checked on construction.
template <Scalar T>
class SparseMatrix {
public:
    using value_type = T;

    SparseMatrix() = default;
    /// All-zero rows x cols matrix.
    SparseMatrix(std::size_t rows, std::size_t cols);
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> col_ptr,
                 std::vector<std::size_t> row_idx, std::vector<T> values);

    /// Builds from unordered triplets; duplicates are summed.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet<T>> entries);
    /// Keeps the exactly-nonzero entries of `dense`.
    static SparseMatrix from_dense(const DenseMatrix<T>& dense);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }

    std::span<const std::size_t> col_ptr() const noexcept { return col_ptr_; }
    std::span<const std::size_t> row_idx() const noexcept { return row_idx_; }
    std::span<const T> values() const noexcept { return values_; }

    std::span<const std::size_t> col_rows(std::size_t j) const noexcept {
        return {row_idx_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
    }
    std::span<const T> col_values(std::size_t j) const noexcept {
        return {values_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
    }

    DenseMatrix<T> to_dense() const;
    SparseMatrix adjoint() const;

    bool operator==(const SparseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> col_ptr_{0};
    std::vector<std::size_t> row_idx_;
    std::vector<T> values_;
};

/// Runtime-typed matrix, used where the field or storage is only known at run
/// time (file I/O, the CLI).
using AnyMatrix = std::variant<DenseMatrix<double>, DenseMatrix<cplx>, SparseMatrix<double>, SparseMatrix<cplx>>;

Field field_of_matrix(const AnyMatrix& a) noexcept;
bool is_sparse(const AnyMatrix& a) noexcept;
std::size_t rows_of(const AnyMatrix& a) noexcept;
std::size_t cols_of(const AnyMatrix& a) noexcept;

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// Bijection on {0, ..., size-1}.
///
/// Convention used throughout the library: for P with indices p,
/// row i of P*A is row p[i] of A, and column j of A*Q is column q[j] of A.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> indices);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return indices_.size(); }
    std::size_t operator[](std::size_t i) const noexcept { return indices_[i]; }
    std::span<const std::size_t> indices() const noexcept { return indices_; }

    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::size_t> indices_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

template <Scalar T>
double frobenius_norm(const DenseMatrix<T>& a);
template <Scalar T>
double frobenius_norm(const SparseMatrix<T>& a);
double frobenius_norm(const AnyMatrix& a);

template <Scalar T>
DenseMatrix<T> permute_rows(const Permutation& p, const DenseMatrix<T>& a);
template <Scalar T>
SparseMatrix<T> permute_rows(const Permutation& p, const SparseMatrix<T>& a);
template <Scalar T>
DenseMatrix<T> permute_cols(const DenseMatrix<T>& a, const Permutation& q);
template <Scalar T>
SparseMatrix<T> permute_cols(const SparseMatrix<T>& a, const Permutation& q);

/// Products; run on the OpenMP kernels (see kernels.hpp).
template <Scalar T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b);
template <Scalar T>
DenseMatrix<T> matmul(const SparseMatrix<T>& a, const DenseMatrix<T>& b);
template <Scalar T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const SparseMatrix<T>& b);

template <Scalar T>
DenseMatrix<T> operator+(const DenseMatrix<T>& a, const DenseMatrix<T>& b);
template <Scalar T>
DenseMatrix<T> operator-(const DenseMatrix<T>& a, const DenseMatrix<T>& b);

/// max |a_ij - b_ij|; shapes must match.
template <Scalar T>
double max_abs_diff(const DenseMatrix<T>& a, const DenseMatrix<T>& b);

/// Seeded i.i.d. standard Gaussian matrix. Complex entries have unit variance
/// (real and imaginary parts each N(0, 1/2)).
template <Scalar T>
DenseMatrix<T> gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Seeded random sparse matrix, each entry present independently with
/// probability `density`, values standard Gaussian.
template <Scalar T>
SparseMatrix<T> random_sparse(std::size_t rows, std::size_t cols, double density, std::uint64_t seed);

}  // namespace srlu
