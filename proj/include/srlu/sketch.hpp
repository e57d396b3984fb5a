#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "srlu/matrix.hpp"

namespace srlu {

// ---------------------------------------------------------------------------
// Sparse embedding S = Phi * D
// ---------------------------------------------------------------------------

/// k x n sparse embedding matrix: column j holds the single entry sign[j] at
/// row row_of[j]. Stored as the hash map plus the sign diagonal; never
/// materialized by the application kernels.
class SparseEmbedding {
public:
    SparseEmbedding() = default;

    /// Explicit construction, validates ranges. Use build_sem for random ones.
    SparseEmbedding(std::size_t out_dim, std::size_t in_dim, std::vector<std::uint32_t> row_of,
                    std::vector<std::int8_t> sign, std::uint64_t seed = 0);

    std::size_t out_dim() const noexcept { return out_dim_; }
    std::size_t in_dim() const noexcept { return in_dim_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::span<const std::uint32_t> row_of() const noexcept { return row_of_; }
    std::span<const std::int8_t> sign() const noexcept { return sign_; }

    /// kappa_i: number of columns hashed to row i. Sums to in_dim().
    std::vector<std::size_t> row_counts() const;

    /// Columns grouped by target row, CSR style: columns of row t are
    /// bucket_cols()[bucket_ptr()[t] .. bucket_ptr()[t+1]), in increasing order.
    std::span<const std::size_t> bucket_ptr() const noexcept { return bucket_ptr_; }
    std::span<const std::uint32_t> bucket_cols() const noexcept { return bucket_cols_; }

    template <Scalar T>
    DenseMatrix<T> materialize() const;

    bool operator==(const SparseEmbedding& o) const {
        return out_dim_ == o.out_dim_ && in_dim_ == o.in_dim_ && row_of_ == o.row_of_ && sign_ == o.sign_;
    }

private:
    std::size_t out_dim_ = 0;
    std::size_t in_dim_ = 0;
    std::vector<std::uint32_t> row_of_;
    std::vector<std::int8_t> sign_;
    std::uint64_t seed_ = 0;
    std::vector<std::size_t> bucket_ptr_;
    std::vector<std::uint32_t> bucket_cols_;
};

/// Random k x n sparse embedding: hash rows i.i.d. uniform on {0..k-1}, signs
/// i.i.d. uniform +-1. Deterministic in `seed`.
SparseEmbedding build_sem(std::size_t k, std::size_t n, std::uint64_t seed);

/// Exact singular values of S, sorted descending: sqrt(kappa_i) for each row.
std::vector<double> sem_singular_values(const SparseEmbedding& s);

/// Tail bound on the largest SEM singular value:
/// sqrt(n/k + sqrt(2 (n/k) ln k)). Requires 2 <= k <= n.
double norm_bound_C(std::size_t n, std::size_t k);

// ---------------------------------------------------------------------------
// Subsampled fast transform Pi = scale * R * F * D
// ---------------------------------------------------------------------------

/// fourier: unit-circle phases + DFT (complex field).
/// hadamard: +-1 phases + Walsh-Hadamard, zero-padded to a power of two (real field).
enum class TransformKind { fourier, hadamard };

template <Scalar T>
inline constexpr TransformKind transform_kind_for = std::same_as<T, double> ? TransformKind::hadamard
                                                                            : TransformKind::fourier;

/// k x l subsampled randomized transform. Applied to a length-l vector x:
/// multiply by phase, zero-pad to `pad`, apply the unitary transform, keep the
/// entries at sample_idx, multiply by sqrt(pad/k).
class FastTransformSketch {
public:
    FastTransformSketch() = default;
    FastTransformSketch(TransformKind kind, std::size_t out_dim, std::size_t in_dim, std::vector<cplx> phase,
                        std::vector<std::size_t> sample_idx, std::uint64_t seed = 0);

    TransformKind kind() const noexcept { return kind_; }
    std::size_t out_dim() const noexcept { return out_dim_; }
    std::size_t in_dim() const noexcept { return in_dim_; }
    std::size_t pad() const noexcept { return pad_; }
    double scale() const noexcept { return scale_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::span<const cplx> phase() const noexcept { return phase_; }
    std::span<const std::size_t> sample_idx() const noexcept { return sample_idx_; }

    /// Throws FieldError unless kind() matches the field of T.
    template <Scalar T>
    void check_field() const;

    template <Scalar T>
    DenseMatrix<T> materialize() const;

    bool operator==(const FastTransformSketch&) const = default;

private:
    TransformKind kind_ = TransformKind::hadamard;
    std::size_t out_dim_ = 0;
    std::size_t in_dim_ = 0;
    std::size_t pad_ = 0;
    double scale_ = 1.0;
    std::vector<cplx> phase_;
    std::vector<std::size_t> sample_idx_;
    std::uint64_t seed_ = 0;
};

/// Random k x l transform sketch; sample_idx drawn without replacement.
/// Requires 1 <= k <= pad(l).
FastTransformSketch build_fast_transform(TransformKind kind, std::size_t k, std::size_t l, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Composite Omega = Pi * S
// ---------------------------------------------------------------------------

class CompositeSketch {
public:
    CompositeSketch() = default;
    CompositeSketch(SparseEmbedding sem, FastTransformSketch fast);

    const SparseEmbedding& sem() const noexcept { return sem_; }
    const FastTransformSketch& fast() const noexcept { return fast_; }
    std::size_t out_dim() const noexcept { return fast_.out_dim(); }
    std::size_t in_dim() const noexcept { return sem_.in_dim(); }

    template <Scalar T>
    DenseMatrix<T> materialize() const;

private:
    SparseEmbedding sem_;
    FastTransformSketch fast_;
};

/// k x n composite through an l-dimensional middle layer. The SEM and the
/// transform draw from independent streams of `seed`.
CompositeSketch build_composite(TransformKind kind, std::size_t k, std::size_t l, std::size_t n,
                                std::uint64_t seed);

// ---------------------------------------------------------------------------
// Application
// ---------------------------------------------------------------------------

/// A * S^T (S is real, so S^* = S^T). Cost O(nnz(A)).
template <Scalar T>
DenseMatrix<T> apply_sem_adjoint_right(const DenseMatrix<T>& a, const SparseEmbedding& s);
template <Scalar T>
DenseMatrix<T> apply_sem_adjoint_right(const SparseMatrix<T>& a, const SparseEmbedding& s);

/// S * A. Cost O(nnz(A)).
template <Scalar T>
DenseMatrix<T> apply_sem_left(const SparseEmbedding& s, const DenseMatrix<T>& a);
template <Scalar T>
DenseMatrix<T> apply_sem_left(const SparseEmbedding& s, const SparseMatrix<T>& a);

/// B * Pi^*, one fast transform per row of B.
template <Scalar T>
DenseMatrix<T> apply_fast_adjoint_right(const DenseMatrix<T>& b, const FastTransformSketch& pi);

/// Pi * Y, one fast transform per column of Y.
template <Scalar T>
DenseMatrix<T> apply_fast_left(const FastTransformSketch& pi, const DenseMatrix<T>& y);

/// A * Omega^* = (A * S^T) * Pi^*.
template <Scalar T>
DenseMatrix<T> apply_sketch_right(const DenseMatrix<T>& a, const CompositeSketch& omega);
template <Scalar T>
DenseMatrix<T> apply_sketch_right(const SparseMatrix<T>& a, const CompositeSketch& omega);

/// Omega * A = Pi * (S * A).
template <Scalar T>
DenseMatrix<T> apply_sketch_left(const CompositeSketch& omega, const DenseMatrix<T>& a);
template <Scalar T>
DenseMatrix<T> apply_sketch_left(const CompositeSketch& omega, const SparseMatrix<T>& a);

// ---------------------------------------------------------------------------
// Empirical subspace-embedding quality
// ---------------------------------------------------------------------------

enum class SketchFamily { sem, fast_transform, composite };

/// Random sketch family to sample from. `out_dim` rows; `mid_dim` is the SEM
/// output size for the composite family and ignored otherwise.
struct EmbeddingFamily {
    SketchFamily family = SketchFamily::sem;
    std::size_t out_dim = 0;
    std::size_t mid_dim = 0;
};

struct EmbeddingTrial {
    double sigma_min;
    double sigma_max;
};

/// For each trial t draws a fresh sketch from `family` with seed + t and
/// returns the extreme singular values of sketch * U. U must have orthonormal
/// columns (max |U^*U - I| <= 1e-10).
template <Scalar T>
std::vector<EmbeddingTrial> empirical_embedding_quality(const EmbeddingFamily& family, const DenseMatrix<T>& u,
                                                        int trials, std::uint64_t seed);

}  // namespace srlu
