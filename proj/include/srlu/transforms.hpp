#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "srlu/matrix.hpp"

namespace srlu {

enum class TransformDirection { forward, inverse };

/// Unitary discrete Fourier transform of fixed length.
///
/// forward:  y_k = n^{-1/2} sum_j x_j exp(-2 pi i jk/n)
/// inverse:  y_k = n^{-1/2} sum_j x_j exp(+2 pi i jk/n)
///
/// Power-of-two lengths use an iterative radix-2 transform; any other length
/// goes through Bluestein's chirp-z reduction to a power-of-two convolution.
/// A plan is immutable and may be shared between threads; each caller passes
/// its own scratch buffer of at least scratch_size() elements.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::size_t scratch_size() const noexcept { return bluestein_len_; }

    void execute(std::span<cplx> data, TransformDirection dir, std::span<cplx> scratch) const;

private:
    std::size_t n_;
    std::size_t bluestein_len_ = 0;
    std::vector<cplx> twiddles_;        // radix-2 twiddles for n_ (or bluestein_len_)
    std::vector<std::size_t> bitrev_;
    std::vector<cplx> chirp_;           // exp(-i pi k^2 / n), k < n
    std::vector<cplx> chirp_filter_;    // FFT of the conjugate chirp, length bluestein_len_

    void radix2(std::span<cplx> data, bool inverse) const;
};

/// In-place unitary Walsh-Hadamard transform (Sylvester ordering, scaled by
/// n^{-1/2}). Length must be a power of two.
template <Scalar T>
void walsh_hadamard(std::span<T> data);

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

}  // namespace srlu
