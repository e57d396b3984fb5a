#pragma once

#include <cstddef>
#include <cstdint>

#include "srlu/factorizations.hpp"
#include "srlu/matrix.hpp"

namespace srlu {

enum class SizingMode { practical, theoretical };

/// Configuration of the two-stage randomized LU.
///
/// Shapes: Omega_1 is k1 x n through an l1-row sparse embedding, Omega_2 is
/// k2 x m through an l2-row one. Valid against an m x n target when
/// r <= k1 <= k2, k1 < l1 <= n and k2 < l2 <= m.
struct RandLuParams {
    std::size_t r = 1;
    std::size_t k1 = 0;
    std::size_t l1 = 0;
    std::size_t k2 = 0;
    std::size_t l2 = 0;
    double epsilon = 0.5;
    double delta = 0.1;
    std::uint64_t seed = 0;
    Field field = Field::real64;

    /// Throws ParameterError naming the first violated constraint.
    void validate(std::size_t m, std::size_t n) const;
};

/// Practical mode: k1 = r + 8, k2 = k1 + 8, l1 = min(n, 4 k1), l2 = min(m, 4 k2).
/// The oversampled k1, k2 must fit (k1 <= n-1, k2 <= m-1); only the l's clamp.
///
/// Theoretical mode sizes from the high-probability analysis:
///   k1 = ceil(r/eps * ln(r/eps)),  l1 = ceil(r^2 ln^6(r/eps) + r/eps),
///   l2 = ceil((r^2 + r) / (delta (2 eps - eps^2)^2)),
///   k2 = ceil(4 (sqrt r + sqrt(8 ln(r l2)))^2 ln r),
/// with l2 grown until k2 < l2, k1 and k2 raised to at least r and k1, and the
/// l's clamped to the matrix dimensions.
RandLuParams default_params(std::size_t r, std::size_t m, std::size_t n, Field field, std::uint64_t seed,
                            SizingMode mode = SizingMode::practical, double epsilon = 0.5, double delta = 0.1);

/// Unclamped theoretical l2 bound (r^2 + r) / (delta (2 eps - eps^2)^2).
double theoretical_l2_bound(std::size_t r, double epsilon, double delta);
/// Unclamped theoretical k2 bound 4 (sqrt r + sqrt(8 ln(r l)))^2 ln r.
double theoretical_k2_bound(std::size_t r, std::size_t l);

/// Wall-clock seconds per stage.
struct StageTimes {
    double sketch1 = 0; ///< build Omega_1, B = A Omega_1^*
    double lu1 = 0;     ///< P B = L1 U1
    double sketch2 = 0; ///< build Omega_2, Omega_2 L1, Omega_2 P A
    double pinv = 0;    ///< (Omega_2 L1)^+ and its product with Omega_2 P A
    double lu2 = 0;     ///< column-pivoted LU, L = L1 L~
    double total = 0;
};

/// P A Q ~= L U.
template <Scalar T>
struct RandLuResult {
    Permutation p;      ///< m rows
    Permutation q;      ///< n columns
    DenseMatrix<T> l;   ///< m x k1, lower trapezoidal with unit diagonal
    DenseMatrix<T> u;   ///< k1 x n, upper trapezoidal
    StageTimes elapsed;
    int resamples = 0;  ///< sketch pairs redrawn after a singular Omega_2 L1
};

/// The sparse-projection randomized LU:
///   1. Omega_1 = Pi_1 S_1 (k1 x n)     2. B = A Omega_1^*
///   3. P B = L1 U1                      4. Omega_2 = Pi_2 S_2 (k2 x m)
///   5. W = (Omega_2 L1)^+               6. W Omega_2 P A Q = L~ U
///   7. L = L1 L~                        8. return P, Q, L, U
/// Real input uses the Hadamard transform, complex input the Fourier one.
/// A singular Omega_2 L1 redraws both sketches (seed + 2a, seed + 2a + 1 for
/// attempt a) up to three times before raising NumericalError.
template <class Matrix>
RandLuResult<typename Matrix::value_type> sparse_randomized_lu(const Matrix& a, const RandLuParams& params);

/// Same pipeline with dense i.i.d. Gaussian sketches applied by matmul.
template <class Matrix>
RandLuResult<typename Matrix::value_type> gaussian_randomized_lu(const Matrix& a, const RandLuParams& params);

/// Steps 1-2 alone: B = A Omega_1^* with the sketch the driver's first attempt
/// uses for the same params.
template <class Matrix>
DenseMatrix<typename Matrix::value_type> sketch_range(const Matrix& a, const RandLuParams& params);

/// ||L U - P A Q||_F, evaluated in column blocks without forming P, Q or the
/// full product.
template <class Matrix>
double approximation_error(const Matrix& a, const RandLuResult<typename Matrix::value_type>& res);

/// 1.48 (1 + eps) (C(n, k2) / (0.4 (1 - eps)) + 1).
double theoretical_error_factor(double epsilon, std::size_t n, std::size_t k2);

}  // namespace srlu
