#include "srlu/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "srlu/kernels.hpp"
#include "srlu/rng.hpp"

namespace srlu {

std::string_view to_string(Field field) noexcept {
    return field == Field::real64 ? "real" : "complex";
}

bool is_finite(double x) noexcept { return std::isfinite(x); }
bool is_finite(const cplx& x) noexcept { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

// ---------------------------------------------------------------------------
// DenseMatrix
// ---------------------------------------------------------------------------

template <Scalar T>
DenseMatrix<T>::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("dense matrix: " + std::to_string(data_.size()) + " values for a " +
                             std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    check_finite();
}

template <Scalar T>
DenseMatrix<T> DenseMatrix<T>::from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m ? rows.begin()->size() : 0;
    DenseMatrix out(m, n);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n) throw DimensionError("from_rows: ragged rows");
        std::size_t j = 0;
        for (const T& v : row) out(i, j++) = v;
        ++i;
    }
    out.check_finite();
    return out;
}

template <Scalar T>
DenseMatrix<T> DenseMatrix<T>::identity(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
}

template <Scalar T>
void DenseMatrix<T>::check_finite() const {
    for (const T& v : data_)
        if (!is_finite(v)) throw PreconditionError("matrix contains NaN or Inf");
}

template <Scalar T>
DenseMatrix<T> DenseMatrix<T>::adjoint() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) out(j, i) = conj((*this)(i, j));
    return out;
}

template <Scalar T>
DenseMatrix<T> DenseMatrix<T>::block_cols(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw DimensionError("block_cols: range exceeds column count");
    DenseMatrix out(rows_, count);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * rows_), count * rows_, out.data_.begin());
    return out;
}

// ---------------------------------------------------------------------------
// SparseMatrix
// ---------------------------------------------------------------------------

template <Scalar T>
SparseMatrix<T>::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

template <Scalar T>
SparseMatrix<T>::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> col_ptr,
                              std::vector<std::size_t> row_idx, std::vector<T> values)
    : rows_(rows), cols_(cols), col_ptr_(std::move(col_ptr)), row_idx_(std::move(row_idx)),
      values_(std::move(values)) {
    if (col_ptr_.size() != cols_ + 1) throw DimensionError("sparse matrix: column pointer length != cols + 1");
    if (col_ptr_.front() != 0 || col_ptr_.back() != values_.size() || row_idx_.size() != values_.size())
        throw DimensionError("sparse matrix: column pointers inconsistent with nnz");
    for (std::size_t j = 0; j < cols_; ++j) {
        if (col_ptr_[j] > col_ptr_[j + 1]) throw DimensionError("sparse matrix: column pointers decrease");
        for (std::size_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
            if (row_idx_[p] >= rows_) throw DimensionError("sparse matrix: row index out of range");
            if (p > col_ptr_[j] && row_idx_[p] <= row_idx_[p - 1])
                throw DimensionError("sparse matrix: row indices not strictly increasing in column " +
                                     std::to_string(j));
        }
    }
    for (const T& v : values_)
        if (!is_finite(v)) throw PreconditionError("matrix contains NaN or Inf");
}

template <Scalar T>
SparseMatrix<T> SparseMatrix<T>::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet<T>> entries) {
    for (const auto& e : entries)
        if (e.row >= rows || e.col >= cols) throw DimensionError("triplet index out of range");
    std::sort(entries.begin(), entries.end(),
              [](const Triplet<T>& a, const Triplet<T>& b) { return a.col != b.col ? a.col < b.col : a.row < b.row; });
    std::vector<std::size_t> col_ptr(cols + 1, 0);
    std::vector<std::size_t> row_idx;
    std::vector<T> values;
    row_idx.reserve(entries.size());
    values.reserve(entries.size());
    for (std::size_t p = 0; p < entries.size(); ++p) {
        const auto& e = entries[p];
        if (p > 0 && entries[p - 1].col == e.col && entries[p - 1].row == e.row) {
            values.back() += e.value;
            continue;
        }
        row_idx.push_back(e.row);
        values.push_back(e.value);
        ++col_ptr[e.col + 1];
    }
    std::partial_sum(col_ptr.begin(), col_ptr.end(), col_ptr.begin());
    return SparseMatrix(rows, cols, std::move(col_ptr), std::move(row_idx), std::move(values));
}

template <Scalar T>
SparseMatrix<T> SparseMatrix<T>::from_dense(const DenseMatrix<T>& dense) {
    std::vector<std::size_t> col_ptr(dense.cols() + 1, 0);
    std::vector<std::size_t> row_idx;
    std::vector<T> values;
    for (std::size_t j = 0; j < dense.cols(); ++j) {
        for (std::size_t i = 0; i < dense.rows(); ++i) {
            if (dense(i, j) != T(0)) {
                row_idx.push_back(i);
                values.push_back(dense(i, j));
            }
        }
        col_ptr[j + 1] = values.size();
    }
    return SparseMatrix(dense.rows(), dense.cols(), std::move(col_ptr), std::move(row_idx), std::move(values));
}

template <Scalar T>
DenseMatrix<T> SparseMatrix<T>::to_dense() const {
    DenseMatrix<T> out(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) out(row_idx_[p], j) = values_[p];
    return out;
}

template <Scalar T>
SparseMatrix<T> SparseMatrix<T>::adjoint() const {
    // Counting sort by row: the transposed columns come out already ordered.
    std::vector<std::size_t> col_ptr(rows_ + 1, 0);
    for (std::size_t r : row_idx_) ++col_ptr[r + 1];
    std::partial_sum(col_ptr.begin(), col_ptr.end(), col_ptr.begin());
    std::vector<std::size_t> next(col_ptr.begin(), col_ptr.end() - 1);
    std::vector<std::size_t> row_idx(nnz());
    std::vector<T> values(nnz());
    for (std::size_t j = 0; j < cols_; ++j) {
        for (std::size_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) {
            const std::size_t dst = next[row_idx_[p]]++;
            row_idx[dst] = j;
            values[dst] = conj(values_[p]);
        }
    }
    return SparseMatrix(cols_, rows_, std::move(col_ptr), std::move(row_idx), std::move(values));
}

// ---------------------------------------------------------------------------
// AnyMatrix
// ---------------------------------------------------------------------------

Field field_of_matrix(const AnyMatrix& a) noexcept {
    return std::visit([](const auto& m) { return field_of<typename std::decay_t<decltype(m)>::value_type>; }, a);
}

bool is_sparse(const AnyMatrix& a) noexcept {
    return std::holds_alternative<SparseMatrix<double>>(a) || std::holds_alternative<SparseMatrix<cplx>>(a);
}

std::size_t rows_of(const AnyMatrix& a) noexcept {
    return std::visit([](const auto& m) { return m.rows(); }, a);
}

std::size_t cols_of(const AnyMatrix& a) noexcept {
    return std::visit([](const auto& m) { return m.cols(); }, a);
}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

Permutation::Permutation(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::vector<bool> seen(indices_.size(), false);
    for (std::size_t v : indices_) {
        if (v >= indices_.size() || seen[v]) throw ParameterError("permutation indices are not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return Permutation(std::move(idx));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(indices_.size());
    for (std::size_t i = 0; i < indices_.size(); ++i) inv[indices_[i]] = i;
    return Permutation(std::move(inv));
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

template <Scalar T>
double frobenius_norm(const DenseMatrix<T>& a) {
    double sum = 0.0;
    for (const T& v : a.values()) sum += abs2(v);
    return std::sqrt(sum);
}

template <Scalar T>
double frobenius_norm(const SparseMatrix<T>& a) {
    double sum = 0.0;
    for (const T& v : a.values()) sum += abs2(v);
    return std::sqrt(sum);
}

double frobenius_norm(const AnyMatrix& a) {
    return std::visit([](const auto& m) { return frobenius_norm(m); }, a);
}

template <Scalar T>
DenseMatrix<T> permute_rows(const Permutation& p, const DenseMatrix<T>& a) {
    if (p.size() != a.rows())
        throw DimensionError("permute_rows: permutation size " + std::to_string(p.size()) + " vs " +
                             std::to_string(a.rows()) + " rows");
    DenseMatrix<T> out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        auto src = a.col(j);
        auto dst = out.col(j);
        for (std::size_t i = 0; i < a.rows(); ++i) dst[i] = src[p[i]];
    }
    return out;
}

template <Scalar T>
SparseMatrix<T> permute_rows(const Permutation& p, const SparseMatrix<T>& a) {
    if (p.size() != a.rows()) throw DimensionError("permute_rows: permutation size mismatch");
    const Permutation inv = p.inverse();
    std::vector<std::size_t> col_ptr(a.col_ptr().begin(), a.col_ptr().end());
    std::vector<std::size_t> row_idx(a.nnz());
    std::vector<T> values(a.nnz());
    std::vector<std::pair<std::size_t, T>> column;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        column.clear();
        auto rows = a.col_rows(j);
        auto vals = a.col_values(j);
        for (std::size_t t = 0; t < rows.size(); ++t) column.emplace_back(inv[rows[t]], vals[t]);
        std::sort(column.begin(), column.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t t = 0; t < column.size(); ++t) {
            row_idx[col_ptr[j] + t] = column[t].first;
            values[col_ptr[j] + t] = column[t].second;
        }
    }
    return SparseMatrix<T>(a.rows(), a.cols(), std::move(col_ptr), std::move(row_idx), std::move(values));
}

template <Scalar T>
DenseMatrix<T> permute_cols(const DenseMatrix<T>& a, const Permutation& q) {
    if (q.size() != a.cols())
        throw DimensionError("permute_cols: permutation size " + std::to_string(q.size()) + " vs " +
                             std::to_string(a.cols()) + " cols");
    DenseMatrix<T> out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) std::ranges::copy(a.col(q[j]), out.col(j).begin());
    return out;
}

template <Scalar T>
SparseMatrix<T> permute_cols(const SparseMatrix<T>& a, const Permutation& q) {
    if (q.size() != a.cols()) throw DimensionError("permute_cols: permutation size mismatch");
    std::vector<std::size_t> col_ptr(a.cols() + 1, 0);
    std::vector<std::size_t> row_idx;
    std::vector<T> values;
    row_idx.reserve(a.nnz());
    values.reserve(a.nnz());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        auto rows = a.col_rows(q[j]);
        auto vals = a.col_values(q[j]);
        row_idx.insert(row_idx.end(), rows.begin(), rows.end());
        values.insert(values.end(), vals.begin(), vals.end());
        col_ptr[j + 1] = values.size();
    }
    return SparseMatrix<T>(a.rows(), a.cols(), std::move(col_ptr), std::move(row_idx), std::move(values));
}

template <Scalar T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    return kernels::gemm(a, b);
}

template <Scalar T>
DenseMatrix<T> matmul(const SparseMatrix<T>& a, const DenseMatrix<T>& b) {
    return kernels::sparse_dense(a, b);
}

template <Scalar T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const SparseMatrix<T>& b) {
    return kernels::dense_sparse(a, b);
}

namespace {
template <Scalar T, class Op>
DenseMatrix<T> elementwise(const DenseMatrix<T>& a, const DenseMatrix<T>& b, Op op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("elementwise op: shape mismatch");
    DenseMatrix<T> out(a.rows(), a.cols());
    auto x = a.values();
    auto y = b.values();
    auto z = out.values();
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = op(x[i], y[i]);
    return out;
}
}  // namespace

template <Scalar T>
DenseMatrix<T> operator+(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    return elementwise(a, b, [](const T& x, const T& y) { return x + y; });
}

template <Scalar T>
DenseMatrix<T> operator-(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    return elementwise(a, b, [](const T& x, const T& y) { return x - y; });
}

template <Scalar T>
double max_abs_diff(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
    double worst = 0.0;
    auto x = a.values();
    auto y = b.values();
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

template <Scalar T>
DenseMatrix<T> gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    CounterRng rng(seed);
    DenseMatrix<T> out(rows, cols);
    for (T& v : out.values()) {
        if constexpr (std::same_as<T, double>) {
            v = rng.gaussian();
        } else {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            v = cplx(re, im) * std::sqrt(0.5);
        }
    }
    return out;
}

template <Scalar T>
SparseMatrix<T> random_sparse(std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0)) throw ParameterError("random_sparse: density outside [0, 1]");
    CounterRng rng(seed);
    std::vector<std::size_t> col_ptr(cols + 1, 0);
    std::vector<std::size_t> row_idx;
    std::vector<T> values;
    row_idx.reserve(static_cast<std::size_t>(density * static_cast<double>(rows * cols) * 1.1) + 16);
    values.reserve(row_idx.capacity());
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            if (rng.uniform01() >= density) continue;
            row_idx.push_back(i);
            if constexpr (std::same_as<T, double>) {
                values.push_back(rng.gaussian());
            } else {
                const double re = rng.gaussian();
                values.push_back(cplx(re, rng.gaussian()) * std::sqrt(0.5));
            }
        }
        col_ptr[j + 1] = values.size();
    }
    return SparseMatrix<T>(rows, cols, std::move(col_ptr), std::move(row_idx), std::move(values));
}

#define SRLU_INSTANTIATE(T)                                                                          \
    template class DenseMatrix<T>;                                                                   \
    template class SparseMatrix<T>;                                                                  \
    template double frobenius_norm(const DenseMatrix<T>&);                                           \
    template double frobenius_norm(const SparseMatrix<T>&);                                          \
    template DenseMatrix<T> permute_rows(const Permutation&, const DenseMatrix<T>&);                 \
    template SparseMatrix<T> permute_rows(const Permutation&, const SparseMatrix<T>&);               \
    template DenseMatrix<T> permute_cols(const DenseMatrix<T>&, const Permutation&);                 \
    template SparseMatrix<T> permute_cols(const SparseMatrix<T>&, const Permutation&);               \
    template DenseMatrix<T> matmul(const DenseMatrix<T>&, const DenseMatrix<T>&);                    \
    template DenseMatrix<T> matmul(const SparseMatrix<T>&, const DenseMatrix<T>&);                   \
    template DenseMatrix<T> matmul(const DenseMatrix<T>&, const SparseMatrix<T>&);                   \
    template DenseMatrix<T> operator+(const DenseMatrix<T>&, const DenseMatrix<T>&);                 \
    template DenseMatrix<T> operator-(const DenseMatrix<T>&, const DenseMatrix<T>&);                 \
    template double max_abs_diff(const DenseMatrix<T>&, const DenseMatrix<T>&);                      \
    template DenseMatrix<T> gaussian_matrix<T>(std::size_t, std::size_t, std::uint64_t);             \
    template SparseMatrix<T> random_sparse<T>(std::size_t, std::size_t, double, std::uint64_t);

SRLU_INSTANTIATE(double)
SRLU_INSTANTIATE(cplx)

#undef SRLU_INSTANTIATE

}  // namespace srlu
