#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "srlu/factorizations.hpp"
#include "srlu/rng.hpp"
#include "srlu/sketch.hpp"

using namespace srlu;

namespace {

template <class T>
double rel_diff(const DenseMatrix<T>& got, const DenseMatrix<T>& want) {
    const double ref = oracle::fro(want);
    return oracle::fro_diff(got, want) / (ref > 0 ? ref : 1.0);
}

SparseEmbedding identity_sem(std::size_t n) {
    std::vector<std::uint32_t> rows(n);
    for (std::size_t j = 0; j < n; ++j) rows[j] = static_cast<std::uint32_t>(j);
    return SparseEmbedding(n, n, rows, std::vector<std::int8_t>(n, 1));
}

}  // namespace

// --- SparseEmbedding -------------------------------------------------------

TEST(Sem, IdentityShapedMaterializesToIdentity) {
    EXPECT_EQ(identity_sem(4).materialize<double>(), DenseMatrix<double>::identity(4));
}

TEST(Sem, ConstructorValidates) {
    EXPECT_THROW(SparseEmbedding(2, 2, {0, 2}, {1, 1}), ParameterError);
    EXPECT_THROW(SparseEmbedding(2, 2, {0, 1}, {1, 0}), ParameterError);
    EXPECT_THROW(SparseEmbedding(2, 3, {0, 1}, {1, 1}), DimensionError);
    EXPECT_THROW(SparseEmbedding(0, 0, {}, {}), ParameterError);
}

TEST(Sem, BuildRejectsBadSizes) {
    EXPECT_THROW(build_sem(0, 5, 1), ParameterError);
    EXPECT_THROW(build_sem(6, 5, 1), ParameterError);
    EXPECT_NO_THROW(build_sem(5, 5, 1));
}

TEST(Sem, StructureHoldsOnRandomInstances) {
    CounterRng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(120);
        const std::size_t k = 1 + rng.below(n);
        const auto s = build_sem(k, n, trial);
        const auto d = s.materialize<double>();
        std::size_t nnz = 0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t in_col = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (d(i, j) != 0.0) {
                    ++in_col;
                    EXPECT_EQ(i, s.row_of()[j]);
                    EXPECT_EQ(d(i, j), static_cast<double>(s.sign()[j]));
                }
            EXPECT_EQ(in_col, 1u);
            nnz += in_col;
        }
        EXPECT_EQ(nnz, n);
        const auto counts = s.row_counts();
        EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::size_t{0}), n);
        EXPECT_NEAR(frobenius_norm(d), std::sqrt(static_cast<double>(n)), 1e-12);
    }
}

TEST(Sem, FrobeniusIsSqrtN) {
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        EXPECT_NEAR(frobenius_norm(build_sem(2, 100, seed).materialize<double>()), 10.0, 1e-13);
}

TEST(Sem, SeedDeterminismAndNoCollisions) {
    EXPECT_EQ(build_sem(10, 200, 5), build_sem(10, 200, 5));
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const auto s = build_sem(16, 64, seed);
        seen.emplace(s.row_of().begin(), s.row_of().end());
    }
    EXPECT_EQ(seen.size(), 10000u);
}

TEST(Sem, RowChoiceIsUniform) {
    const auto s = build_sem(4, 40000, 99);
    for (auto c : s.row_counts()) EXPECT_NEAR(static_cast<double>(c), 10000.0, 400.0);
    long sum = 0;
    for (auto g : s.sign()) sum += g;
    EXPECT_LT(std::abs(sum), 800);
}

TEST(SemSpectrum, HandExamples) {
    const SparseEmbedding s(2, 4, {0, 0, 1, 0}, {1, -1, 1, 1});
    const auto sv = sem_singular_values(s);
    ASSERT_EQ(sv.size(), 2u);
    EXPECT_DOUBLE_EQ(sv[0], std::sqrt(3.0));
    EXPECT_DOUBLE_EQ(sv[1], 1.0);
    for (double v : sem_singular_values(identity_sem(6))) EXPECT_EQ(v, 1.0);
}

TEST(SemSpectrum, MatchesGramEigenOracle) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = build_sem(5, 40, seed);
        const auto want = oracle::singular_values_gram(oracle::sem_dense<double>(s));
        const auto got = sem_singular_values(s);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10);
        EXPECT_DOUBLE_EQ(got.front(),
                         std::sqrt(static_cast<double>(std::ranges::max(s.row_counts()))));
    }
}

TEST(NormBound, Values) {
    EXPECT_NEAR(norm_bound_C(5000, 100), 8.4535, 1e-3);
    for (std::size_t k : {2u, 10u, 77u})
        EXPECT_NEAR(norm_bound_C(k, k), std::sqrt(1.0 + std::sqrt(2.0 * std::log(static_cast<double>(k)))), 1e-14);
    EXPECT_THROW(norm_bound_C(10, 1), ParameterError);
    EXPECT_THROW(norm_bound_C(10, 11), ParameterError);
}

// --- FastTransformSketch ---------------------------------------------------

TEST(FastTransform, BuildInvariants) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto h = build_fast_transform(TransformKind::hadamard, 7, 20, seed);
        EXPECT_EQ(h.pad(), 32u);
        EXPECT_DOUBLE_EQ(h.scale(), std::sqrt(32.0 / 7.0));
        for (auto z : h.phase()) EXPECT_TRUE(z == cplx(1) || z == cplx(-1));
        const auto f = build_fast_transform(TransformKind::fourier, 7, 20, seed);
        EXPECT_EQ(f.pad(), 20u);
        for (auto z : f.phase()) EXPECT_NEAR(std::abs(z), 1.0, 1e-14);
        std::set<std::size_t> distinct(f.sample_idx().begin(), f.sample_idx().end());
        EXPECT_EQ(distinct.size(), 7u);
    }
    EXPECT_THROW(build_fast_transform(TransformKind::fourier, 21, 20, 0), ParameterError);
    EXPECT_NO_THROW(build_fast_transform(TransformKind::hadamard, 32, 20, 0));
}

TEST(FastTransform, ConstructorValidates) {
    EXPECT_THROW(FastTransformSketch(TransformKind::fourier, 2, 3, {1, 1, cplx(0.5)}, {0, 1}), ParameterError);
    EXPECT_THROW(FastTransformSketch(TransformKind::fourier, 2, 3, {1, 1, 1}, {0, 0}), ParameterError);
    EXPECT_THROW(FastTransformSketch(TransformKind::fourier, 2, 3, {1, 1, 1}, {0, 3}), ParameterError);
    EXPECT_THROW(FastTransformSketch(TransformKind::hadamard, 2, 3, {1, 1, cplx(0, 1)}, {0, 1}), ParameterError);
    EXPECT_NO_THROW(FastTransformSketch(TransformKind::hadamard, 2, 3, {1, -1, 1}, {0, 3}));
}

TEST(FastTransform, FieldMismatchIsRejected) {
    const auto f = build_fast_transform(TransformKind::fourier, 3, 8, 1);
    const auto h = build_fast_transform(TransformKind::hadamard, 3, 8, 1);
    EXPECT_THROW(apply_fast_adjoint_right(DenseMatrix<double>(2, 8), f), FieldError);
    EXPECT_THROW(apply_fast_left(h, DenseMatrix<cplx>(8, 2)), FieldError);
}

TEST(FastTransform, ZeroInZeroOut) {
    const auto f = build_fast_transform(TransformKind::fourier, 3, 8, 1);
    EXPECT_EQ(apply_fast_adjoint_right(DenseMatrix<cplx>(4, 8), f), DenseMatrix<cplx>(4, 3));
}

TEST(FastTransform, FullSamplingIsAnIsometry) {
    for (std::size_t l : {8u, 12u, 16u}) {
        const auto f = build_fast_transform(TransformKind::fourier, l, l, l);
        const auto b = gaussian_matrix<cplx>(5, l, 2);
        EXPECT_NEAR(frobenius_norm(apply_fast_adjoint_right(b, f)), frobenius_norm(b), 1e-10);
        EXPECT_NEAR(frobenius_norm(apply_fast_left(f, b.adjoint())), frobenius_norm(b), 1e-10);
    }
    const auto h = build_fast_transform(TransformKind::hadamard, 16, 16, 3);
    const auto x = gaussian_matrix<double>(16, 1, 4);
    EXPECT_NEAR(frobenius_norm(apply_fast_left(h, x)), frobenius_norm(x), 1e-10);
}

TEST(FastTransform, MaterializeMatchesBruteForceTransforms) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto f = build_fast_transform(TransformKind::fourier, 4, 9, seed);
        EXPECT_LT(rel_diff(f.materialize<cplx>(), oracle::fast_dense<cplx>(f)), 1e-12);
        const auto h = build_fast_transform(TransformKind::hadamard, 5, 13, seed);
        EXPECT_LT(rel_diff(h.materialize<double>(), oracle::fast_dense<double>(h)), 1e-12);
    }
}

TEST(FastTransform, AdjointApplyMatchesDenseOracle) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto f = build_fast_transform(TransformKind::fourier, 3, 8, seed);
        const auto b = gaussian_matrix<cplx>(6, 8, seed + 50);
        const auto want = oracle::matmul(b, oracle::adjoint(oracle::fast_dense<cplx>(f)));
        EXPECT_LT(rel_diff(apply_fast_adjoint_right(b, f), want), 1e-10);
    }
}

// --- SEM application -------------------------------------------------------

TEST(SemApply, HandExample) {
    const SparseEmbedding s(2, 3, {0, 0, 1}, {1, -1, 1});
    const auto a = DenseMatrix<double>::from_rows({{1, 2, 3}});
    EXPECT_EQ(apply_sem_adjoint_right(a, s), DenseMatrix<double>::from_rows({{-1, 3}}));
    EXPECT_EQ(apply_sem_adjoint_right(SparseMatrix<double>::from_dense(a), s),
              DenseMatrix<double>::from_rows({{-1, 3}}));
}

TEST(SemApply, IdentityIsNoOp) {
    const auto a = gaussian_matrix<double>(3, 5, 1);
    EXPECT_EQ(apply_sem_adjoint_right(a, identity_sem(5)), a);
    EXPECT_EQ(apply_sem_left(identity_sem(3), a), a);
}

TEST(SemApply, MatchesDenseOracle) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = build_sem(4, 6, seed);
        const auto a = gaussian_matrix<cplx>(8, 6, seed);
        const auto sd = oracle::sem_dense<cplx>(s);
        EXPECT_LT(rel_diff(apply_sem_adjoint_right(a, s), oracle::matmul(a, oracle::adjoint(sd))), 1e-12);
        const auto b = gaussian_matrix<cplx>(6, 3, seed + 7);
        EXPECT_LT(rel_diff(apply_sem_left(s, b), oracle::matmul(sd, b)), 1e-12);
        EXPECT_LT(rel_diff(apply_sem_left(s, SparseMatrix<cplx>::from_dense(b)), oracle::matmul(sd, b)), 1e-12);
    }
}

TEST(SemApply, DimensionErrors) {
    const auto s = build_sem(2, 5, 0);
    EXPECT_THROW(apply_sem_adjoint_right(DenseMatrix<double>(3, 4), s), DimensionError);
    EXPECT_THROW(apply_sem_left(s, DenseMatrix<double>(4, 3)), DimensionError);
    EXPECT_THROW(apply_sem_left(s, SparseMatrix<double>(4, 3)), DimensionError);
}

// --- Composite -------------------------------------------------------------

TEST(Composite, ShapeMismatchRejected) {
    EXPECT_THROW(CompositeSketch(build_sem(6, 20, 0), build_fast_transform(TransformKind::fourier, 3, 7, 0)),
                 DimensionError);
}

TEST(Composite, ZeroInZeroOut) {
    const auto omega = build_composite(TransformKind::hadamard, 4, 10, 30, 1);
    EXPECT_EQ(apply_sketch_right(SparseMatrix<double>(7, 30), omega), DenseMatrix<double>(7, 4));
}

TEST(Composite, SparseRightMatchesDenseOracle) {
    const auto a = random_sparse<double>(500, 400, 0.01, 3);
    const auto omega = build_composite(TransformKind::hadamard, 20, 80, 400, 4);
    const auto want = oracle::matmul(a.to_dense(), oracle::adjoint(oracle::composite_dense<double>(omega)));
    EXPECT_LT(rel_diff(apply_sketch_right(a, omega), want), 1e-9);
}

TEST(Composite, LeftOnIdentityIsTheMaterialization) {
    const auto omega = build_composite(TransformKind::fourier, 5, 12, 30, 8);
    EXPECT_LT(rel_diff(apply_sketch_left(omega, DenseMatrix<cplx>::identity(30)), oracle::composite_dense<cplx>(omega)),
              1e-10);
    EXPECT_LT(rel_diff(omega.materialize<cplx>(), oracle::composite_dense<cplx>(omega)), 1e-12);
}

TEST(Composite, LeftMatchesDenseOracle) {
    const auto a = gaussian_matrix<cplx>(300, 200, 5);
    const auto omega = build_composite(TransformKind::fourier, 24, 96, 300, 6);
    const auto want = oracle::matmul(oracle::composite_dense<cplx>(omega), a);
    EXPECT_LT(rel_diff(apply_sketch_left(omega, a), want), 1e-9);
}

TEST(Composite, LeftAndRightAreAdjointConsistent) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto a = gaussian_matrix<cplx>(40, 15, seed);
        const auto omega = build_composite(TransformKind::fourier, 6, 20, 40, seed);
        const auto left = apply_sketch_left(omega, a).adjoint();
        const auto right = apply_sketch_right(a.adjoint(), omega);
        EXPECT_LE(max_abs_diff(left, right), 1e-12);
        const auto ar = gaussian_matrix<double>(40, 15, seed);
        const auto omega_r = build_composite(TransformKind::hadamard, 6, 20, 40, seed);
        EXPECT_LE(max_abs_diff(apply_sketch_left(omega_r, ar).adjoint(), apply_sketch_right(ar.adjoint(), omega_r)),
                  1e-12);
    }
}

TEST(Composite, SubSeedsAreIndependent) {
    const auto omega = build_composite(TransformKind::hadamard, 4, 16, 64, 9);
    EXPECT_NE(omega.sem(), build_sem(16, 64, 9));
    EXPECT_EQ(omega.sem(), build_composite(TransformKind::hadamard, 4, 16, 64, 9).sem());
}

// --- Embedding quality -----------------------------------------------------

TEST(EmbeddingQuality, RejectsNonOrthonormalU) {
    const EmbeddingFamily fam{SketchFamily::sem, 4, 0};
    EXPECT_THROW(empirical_embedding_quality(fam, gaussian_matrix<double>(10, 2, 0), 1, 0), PreconditionError);
}

TEST(EmbeddingQuality, FullSamplingIsExact) {
    const auto u = orthonormal_basis(gaussian_matrix<cplx>(16, 3, 1));
    const EmbeddingFamily fam{SketchFamily::fast_transform, 16, 0};
    for (const auto& t : empirical_embedding_quality(fam, u, 10, 2)) {
        EXPECT_NEAR(t.sigma_min, 1.0, 1e-10);
        EXPECT_NEAR(t.sigma_max, 1.0, 1e-10);
    }
}

TEST(EmbeddingQuality, SemOnUnitColumn) {
    // r = 1, eps = 0.5, delta = 0.1: l = 10 * 2 / 0.75^2 -> 36 rows.
    auto u = DenseMatrix<double>(200, 1);
    for (auto& v : u.values()) v = 1.0 / std::sqrt(200.0);
    const EmbeddingFamily fam{SketchFamily::sem, 36, 0};
    const auto trials = empirical_embedding_quality(fam, u, 200, 11);
    int inside = 0;
    for (const auto& t : trials) inside += (t.sigma_min >= 0.5 && t.sigma_max <= 1.5) ? 1 : 0;
    EXPECT_GE(inside, 180);
}

TEST(EmbeddingQuality, TrialSeedsAreSeedPlusIndex) {
    const auto u = orthonormal_basis(gaussian_matrix<double>(64, 2, 3));
    const EmbeddingFamily fam{SketchFamily::composite, 8, 32};
    const auto a = empirical_embedding_quality(fam, u, 3, 100);
    const auto b = empirical_embedding_quality(fam, u, 1, 102);
    EXPECT_EQ(a[2].sigma_min, b[0].sigma_min);
    EXPECT_EQ(a[2].sigma_max, b[0].sigma_max);
}
