// The OpenMP kernels must reproduce the serial reference bit for bit, for
// every thread count: each output entry is accumulated in the same order.

#include <gtest/gtest.h>

#include "srlu/kernels.hpp"
#include "srlu/parallel.hpp"
#include "srlu/reference.hpp"
#include "srlu/rng.hpp"
#include "srlu/sketch.hpp"

using namespace srlu;

namespace {

class ThreadCounts : public ::testing::TestWithParam<int> {
protected:
    void SetUp() override {
        saved_ = num_threads();
        set_num_threads(GetParam());
    }
    void TearDown() override { set_num_threads(saved_); }

private:
    int saved_ = 1;
};

struct Shape {
    std::size_t m, n, k, l;
};

Shape random_shape(CounterRng& rng) {
    const std::size_t n = 2 + rng.below(150);
    const std::size_t l = 1 + rng.below(n);
    return {1 + rng.below(60), n, 1 + rng.below(l), l};
}

}  // namespace

TEST_P(ThreadCounts, GemmMatchesReference) {
    CounterRng rng(1);
    for (int t = 0; t < 15; ++t) {
        const auto m = 1 + rng.below(40), k = 1 + rng.below(40), n = 1 + rng.below(40);
        const auto a = gaussian_matrix<cplx>(m, k, t);
        const auto b = gaussian_matrix<cplx>(k, n, t + 100);
        EXPECT_EQ(kernels::gemm(a, b), reference::gemm(a, b));
        const auto s = random_sparse<double>(m, k, 0.3, t);
        const auto bd = gaussian_matrix<double>(k, n, t);
        EXPECT_EQ(kernels::sparse_dense(s, bd), reference::sparse_dense(s, bd));
        const auto ad = gaussian_matrix<double>(n, m, t);
        EXPECT_EQ(kernels::dense_sparse(ad, s), reference::dense_sparse(ad, s));
    }
}

TEST_P(ThreadCounts, SemKernelsMatchReference) {
    CounterRng rng(2);
    for (int t = 0; t < 15; ++t) {
        const auto sh = random_shape(rng);
        const auto s = build_sem(sh.l, sh.n, t);
        const auto a = gaussian_matrix<double>(sh.m, sh.n, t);
        EXPECT_EQ(kernels::sem_adjoint_right(a, s), reference::sem_adjoint_right(a, s));
        const auto sa = random_sparse<cplx>(sh.m, sh.n, 0.1, t);
        EXPECT_EQ(kernels::sem_adjoint_right(sa, s), reference::sem_adjoint_right(sa, s));
        const auto b = gaussian_matrix<cplx>(sh.n, sh.m, t);
        EXPECT_EQ(kernels::sem_left(s, b), reference::sem_left(s, b));
        const auto sb = random_sparse<double>(sh.n, sh.m, 0.1, t);
        EXPECT_EQ(kernels::sem_left(s, sb), reference::sem_left(s, sb));
    }
}

TEST_P(ThreadCounts, FastTransformKernelsMatchReference) {
    CounterRng rng(3);
    for (int t = 0; t < 15; ++t) {
        const auto sh = random_shape(rng);
        const auto f = build_fast_transform(TransformKind::fourier, sh.k, sh.l, t);
        const auto bc = gaussian_matrix<cplx>(sh.m, sh.l, t);
        EXPECT_EQ(kernels::fast_adjoint_right(bc, f), reference::fast_adjoint_right(bc, f));
        EXPECT_EQ(kernels::fast_left(f, bc.adjoint()), reference::fast_left(f, bc.adjoint()));
        const auto h = build_fast_transform(TransformKind::hadamard, sh.k, sh.l, t);
        const auto br = gaussian_matrix<double>(sh.m, sh.l, t);
        EXPECT_EQ(kernels::fast_adjoint_right(br, h), reference::fast_adjoint_right(br, h));
        EXPECT_EQ(kernels::fast_left(h, br.adjoint()), reference::fast_left(h, br.adjoint()));
    }
}

INSTANTIATE_TEST_SUITE_P(Kernels, ThreadCounts, ::testing::Values(1, 2, 4));
