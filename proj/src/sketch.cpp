#include "srlu/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "srlu/factorizations.hpp"
#include "srlu/kernels.hpp"
#include "srlu/rng.hpp"
#include "srlu/transforms.hpp"

namespace srlu {

// ---------------------------------------------------------------------------
// SparseEmbedding
// ---------------------------------------------------------------------------

SparseEmbedding::SparseEmbedding(std::size_t out_dim, std::size_t in_dim, std::vector<std::uint32_t> row_of,
                                 std::vector<std::int8_t> sign, std::uint64_t seed)
    : out_dim_(out_dim), in_dim_(in_dim), row_of_(std::move(row_of)), sign_(std::move(sign)), seed_(seed) {
    if (out_dim_ < 1) throw ParameterError("sparse embedding: out_dim must be >= 1");
    if (row_of_.size() != in_dim_ || sign_.size() != in_dim_)
        throw DimensionError("sparse embedding: row_of and sign must have in_dim entries");
    for (std::size_t j = 0; j < in_dim_; ++j) {
        if (row_of_[j] >= out_dim_) throw ParameterError("sparse embedding: row index out of range");
        if (sign_[j] != 1 && sign_[j] != -1) throw ParameterError("sparse embedding: signs must be +1 or -1");
    }
    bucket_ptr_.assign(out_dim_ + 1, 0);
    for (std::uint32_t t : row_of_) ++bucket_ptr_[t + 1];
    std::partial_sum(bucket_ptr_.begin(), bucket_ptr_.end(), bucket_ptr_.begin());
    bucket_cols_.resize(in_dim_);
    std::vector<std::size_t> next(bucket_ptr_.begin(), bucket_ptr_.end() - 1);
    for (std::size_t j = 0; j < in_dim_; ++j) bucket_cols_[next[row_of_[j]]++] = static_cast<std::uint32_t>(j);
}

std::vector<std::size_t> SparseEmbedding::row_counts() const {
    std::vector<std::size_t> counts(out_dim_);
    for (std::size_t t = 0; t < out_dim_; ++t) counts[t] = bucket_ptr_[t + 1] - bucket_ptr_[t];
    return counts;
}

template <Scalar T>
DenseMatrix<T> SparseEmbedding::materialize() const {
    DenseMatrix<T> out(out_dim_, in_dim_);
    for (std::size_t j = 0; j < in_dim_; ++j) out(row_of_[j], j) = T(sign_[j]);
    return out;
}

SparseEmbedding build_sem(std::size_t k, std::size_t n, std::uint64_t seed) {
    if (k < 1 || k > n)
        throw ParameterError("build_sem: need 1 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    CounterRng rng(seed);
    std::vector<std::uint32_t> row_of(n);
    std::vector<std::int8_t> sign(n);
    for (std::size_t j = 0; j < n; ++j) {
        row_of[j] = static_cast<std::uint32_t>(rng.below(k));
        sign[j] = static_cast<std::int8_t>(rng.sign());
    }
    return SparseEmbedding(k, n, std::move(row_of), std::move(sign), seed);
}

std::vector<double> sem_singular_values(const SparseEmbedding& s) {
    // Rows of S have disjoint supports, so S S^T = diag(kappa).
    std::vector<double> sigma;
    sigma.reserve(s.out_dim());
    for (std::size_t c : s.row_counts()) sigma.push_back(std::sqrt(static_cast<double>(c)));
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

double norm_bound_C(std::size_t n, std::size_t k) {
    if (k < 2 || k > n)
        throw ParameterError("norm_bound_C: need 2 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    const double ratio = static_cast<double>(n) / static_cast<double>(k);
    return std::sqrt(ratio + std::sqrt(2.0 * ratio * std::log(static_cast<double>(k))));
}

// ---------------------------------------------------------------------------
// FastTransformSketch
// ---------------------------------------------------------------------------

FastTransformSketch::FastTransformSketch(TransformKind kind, std::size_t out_dim, std::size_t in_dim,
                                         std::vector<cplx> phase, std::vector<std::size_t> sample_idx,
                                         std::uint64_t seed)
    : kind_(kind), out_dim_(out_dim), in_dim_(in_dim),
      pad_(kind == TransformKind::hadamard ? next_power_of_two(in_dim) : in_dim), phase_(std::move(phase)),
      sample_idx_(std::move(sample_idx)), seed_(seed) {
    if (in_dim_ < 1 || out_dim_ < 1) throw ParameterError("fast transform sketch: dimensions must be >= 1");
    if (out_dim_ > pad_) throw ParameterError("fast transform sketch: out_dim exceeds transform length");
    if (phase_.size() != in_dim_) throw DimensionError("fast transform sketch: phase must have in_dim entries");
    if (sample_idx_.size() != out_dim_) throw DimensionError("fast transform sketch: sample_idx must have out_dim entries");
    for (const cplx& z : phase_) {
        if (std::abs(std::abs(z) - 1.0) > 1e-12) throw ParameterError("fast transform sketch: phases must have unit modulus");
        if (kind_ == TransformKind::hadamard && z != cplx(1) && z != cplx(-1))
            throw ParameterError("fast transform sketch: Hadamard phases must be +1 or -1");
    }
    std::vector<bool> seen(pad_, false);
    for (std::size_t s : sample_idx_) {
        if (s >= pad_ || seen[s]) throw ParameterError("fast transform sketch: sample indices must be distinct and < pad");
        seen[s] = true;
    }
    scale_ = std::sqrt(static_cast<double>(pad_) / static_cast<double>(out_dim_));
}

template <Scalar T>
void FastTransformSketch::check_field() const {
    if (kind_ != transform_kind_for<T>)
        throw FieldError(kind_ == TransformKind::fourier ? "Fourier sketch requires a complex matrix"
                                                         : "Hadamard sketch requires a real matrix");
}

template <Scalar T>
DenseMatrix<T> FastTransformSketch::materialize() const {
    check_field<T>();
    // Row t of Pi is scale * (row sample_idx[t] of the transform) * diag(phase).
    DenseMatrix<T> out(out_dim_, in_dim_);
    for (std::size_t t = 0; t < out_dim_; ++t) {
        const std::size_t s = sample_idx_[t];
        for (std::size_t j = 0; j < in_dim_; ++j) {
            if constexpr (std::same_as<T, double>) {
                const int parity = std::popcount(s & j) & 1;
                out(t, j) = scale_ * (parity ? -1.0 : 1.0) / std::sqrt(static_cast<double>(pad_)) * phase_[j].real();
            } else {
                const auto sj = static_cast<double>((static_cast<unsigned __int128>(s) * j) % pad_);
                const cplx w = std::polar(1.0, -2.0 * std::numbers::pi * sj / static_cast<double>(pad_));
                out(t, j) = scale_ * w / std::sqrt(static_cast<double>(pad_)) * phase_[j];
            }
        }
    }
    return out;
}

FastTransformSketch build_fast_transform(TransformKind kind, std::size_t k, std::size_t l, std::uint64_t seed) {
    if (l < 1) throw ParameterError("build_fast_transform: l must be >= 1");
    const std::size_t pad = kind == TransformKind::hadamard ? next_power_of_two(l) : l;
    if (k < 1 || k > pad)
        throw ParameterError("build_fast_transform: need 1 <= k <= pad (k=" + std::to_string(k) +
                             ", pad=" + std::to_string(pad) + ")");
    CounterRng rng(seed);
    std::vector<cplx> phase(l);
    for (cplx& z : phase) z = kind == TransformKind::hadamard ? cplx(rng.sign()) : rng.unit_phase();
    // Partial Fisher-Yates: the first k slots are a uniform k-subset.
    std::vector<std::size_t> pool(pad);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(pad - i)]);
    pool.resize(k);
    return FastTransformSketch(kind, k, l, std::move(phase), std::move(pool), seed);
}

// ---------------------------------------------------------------------------
// CompositeSketch
// ---------------------------------------------------------------------------

CompositeSketch::CompositeSketch(SparseEmbedding sem, FastTransformSketch fast)
    : sem_(std::move(sem)), fast_(std::move(fast)) {
    if (fast_.in_dim() != sem_.out_dim())
        throw DimensionError("composite sketch: transform in_dim " + std::to_string(fast_.in_dim()) +
                             " != embedding out_dim " + std::to_string(sem_.out_dim()));
}

template <Scalar T>
DenseMatrix<T> CompositeSketch::materialize() const {
    return matmul(fast_.materialize<T>(), sem_.materialize<T>());
}

CompositeSketch build_composite(TransformKind kind, std::size_t k, std::size_t l, std::size_t n, std::uint64_t seed) {
    return CompositeSketch(build_sem(l, n, derive_seed(seed, 0)), build_fast_transform(kind, k, l, derive_seed(seed, 1)));
}

// ---------------------------------------------------------------------------
// Application
// ---------------------------------------------------------------------------

namespace {
void require(bool ok, const char* what) {
    if (!ok) throw DimensionError(what);
}
}  // namespace

template <Scalar T>
DenseMatrix<T> apply_sem_adjoint_right(const DenseMatrix<T>& a, const SparseEmbedding& s) {
    require(a.cols() == s.in_dim(), "apply_sem_adjoint_right: A.cols != S.in_dim");
    return kernels::sem_adjoint_right(a, s);
}

template <Scalar T>
DenseMatrix<T> apply_sem_adjoint_right(const SparseMatrix<T>& a, const SparseEmbedding& s) {
    require(a.cols() == s.in_dim(), "apply_sem_adjoint_right: A.cols != S.in_dim");
    return kernels::sem_adjoint_right(a, s);
}

template <Scalar T>
DenseMatrix<T> apply_sem_left(const SparseEmbedding& s, const DenseMatrix<T>& a) {
    require(a.rows() == s.in_dim(), "apply_sem_left: A.rows != S.in_dim");
    return kernels::sem_left(s, a);
}

template <Scalar T>
DenseMatrix<T> apply_sem_left(const SparseEmbedding& s, const SparseMatrix<T>& a) {
    require(a.rows() == s.in_dim(), "apply_sem_left: A.rows != S.in_dim");
    return kernels::sem_left(s, a);
}

template <Scalar T>
DenseMatrix<T> apply_fast_adjoint_right(const DenseMatrix<T>& b, const FastTransformSketch& pi) {
    pi.check_field<T>();
    require(b.cols() == pi.in_dim(), "apply_fast_adjoint_right: B.cols != Pi.in_dim");
    return kernels::fast_adjoint_right(b, pi);
}

template <Scalar T>
DenseMatrix<T> apply_fast_left(const FastTransformSketch& pi, const DenseMatrix<T>& y) {
    pi.check_field<T>();
    require(y.rows() == pi.in_dim(), "apply_fast_left: Y.rows != Pi.in_dim");
    return kernels::fast_left(pi, y);
}

template <Scalar T>
DenseMatrix<T> apply_sketch_right(const DenseMatrix<T>& a, const CompositeSketch& omega) {
    omega.fast().check_field<T>();
    return apply_fast_adjoint_right(apply_sem_adjoint_right(a, omega.sem()), omega.fast());
}

template <Scalar T>
DenseMatrix<T> apply_sketch_right(const SparseMatrix<T>& a, const CompositeSketch& omega) {
    omega.fast().check_field<T>();
    return apply_fast_adjoint_right(apply_sem_adjoint_right(a, omega.sem()), omega.fast());
}

template <Scalar T>
DenseMatrix<T> apply_sketch_left(const CompositeSketch& omega, const DenseMatrix<T>& a) {
    omega.fast().check_field<T>();
    return apply_fast_left(omega.fast(), apply_sem_left(omega.sem(), a));
}

template <Scalar T>
DenseMatrix<T> apply_sketch_left(const CompositeSketch& omega, const SparseMatrix<T>& a) {
    omega.fast().check_field<T>();
    return apply_fast_left(omega.fast(), apply_sem_left(omega.sem(), a));
}

// ---------------------------------------------------------------------------
// Embedding quality
// ---------------------------------------------------------------------------

template <Scalar T>
std::vector<EmbeddingTrial> empirical_embedding_quality(const EmbeddingFamily& family, const DenseMatrix<T>& u,
                                                        int trials, std::uint64_t seed) {
    if (trials < 0) throw ParameterError("empirical_embedding_quality: negative trial count");
    const DenseMatrix<T> gram = matmul(u.adjoint(), u);
    if (max_abs_diff(gram, DenseMatrix<T>::identity(u.cols())) > 1e-10)
        throw PreconditionError("empirical_embedding_quality: U does not have orthonormal columns");

    const std::size_t n = u.rows();
    const TransformKind kind = transform_kind_for<T>;
    std::vector<EmbeddingTrial> out;
    out.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
        DenseMatrix<T> sketched;
        switch (family.family) {
            case SketchFamily::sem:
                sketched = apply_sem_left(build_sem(family.out_dim, n, trial_seed), u);
                break;
            case SketchFamily::fast_transform:
                sketched = apply_fast_left(build_fast_transform(kind, family.out_dim, n, trial_seed), u);
                break;
            case SketchFamily::composite:
                sketched = apply_sketch_left(build_composite(kind, family.out_dim, family.mid_dim, n, trial_seed), u);
                break;
        }
        const std::vector<double> sigma = singular_values(sketched);
        out.push_back({sigma.back(), sigma.front()});
    }
    return out;
}

#define SRLU_INSTANTIATE(T)                                                                                  \
    template DenseMatrix<T> SparseEmbedding::materialize<T>() const;                                         \
    template void FastTransformSketch::check_field<T>() const;                                               \
    template DenseMatrix<T> FastTransformSketch::materialize<T>() const;                                     \
    template DenseMatrix<T> CompositeSketch::materialize<T>() const;                                         \
    template DenseMatrix<T> apply_sem_adjoint_right(const DenseMatrix<T>&, const SparseEmbedding&);          \
    template DenseMatrix<T> apply_sem_adjoint_right(const SparseMatrix<T>&, const SparseEmbedding&);         \
    template DenseMatrix<T> apply_sem_left(const SparseEmbedding&, const DenseMatrix<T>&);                   \
    template DenseMatrix<T> apply_sem_left(const SparseEmbedding&, const SparseMatrix<T>&);                  \
    template DenseMatrix<T> apply_fast_adjoint_right(const DenseMatrix<T>&, const FastTransformSketch&);     \
    template DenseMatrix<T> apply_fast_left(const FastTransformSketch&, const DenseMatrix<T>&);              \
    template DenseMatrix<T> apply_sketch_right(const DenseMatrix<T>&, const CompositeSketch&);               \
    template DenseMatrix<T> apply_sketch_right(const SparseMatrix<T>&, const CompositeSketch&);              \
    template DenseMatrix<T> apply_sketch_left(const CompositeSketch&, const DenseMatrix<T>&);                \
    template DenseMatrix<T> apply_sketch_left(const CompositeSketch&, const SparseMatrix<T>&);               \
    template std::vector<EmbeddingTrial> empirical_embedding_quality(const EmbeddingFamily&,                 \
                                                                     const DenseMatrix<T>&, int, std::uint64_t);

SRLU_INSTANTIATE(double)
SRLU_INSTANTIATE(cplx)

#undef SRLU_INSTANTIATE

}  // namespace srlu
