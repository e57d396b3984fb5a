#include "srlu/transforms.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace srlu {

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

std::size_t next_power_of_two(std::size_t n) noexcept { return n <= 1 ? 1 : std::bit_ceil(n); }

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw ParameterError("FftPlan: zero length");
    std::size_t radix_len = n;
    if (!is_power_of_two(n)) {
        bluestein_len_ = next_power_of_two(2 * n - 1);
        radix_len = bluestein_len_;
    }

    twiddles_.resize(radix_len / 2);
    for (std::size_t k = 0; k < radix_len / 2; ++k)
        twiddles_[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(radix_len));
    bitrev_.resize(radix_len);
    const int bits = std::countr_zero(radix_len);
    for (std::size_t i = 0; i < radix_len; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        bitrev_[i] = r;
    }

    if (bluestein_len_) {
        // k^2 mod 2n keeps the chirp angle small for large k.
        chirp_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto k2 = static_cast<double>((static_cast<unsigned __int128>(k) * k) % (2 * n));
            chirp_[k] = std::polar(1.0, -std::numbers::pi * k2 / static_cast<double>(n));
        }
        chirp_filter_.assign(bluestein_len_, cplx(0));
        chirp_filter_[0] = std::conj(chirp_[0]);
        for (std::size_t k = 1; k < n; ++k) {
            chirp_filter_[k] = std::conj(chirp_[k]);
            chirp_filter_[bluestein_len_ - k] = std::conj(chirp_[k]);
        }
        radix2(chirp_filter_, false);
    }
}

void FftPlan::radix2(std::span<cplx> data, bool inverse) const {
    const std::size_t len = data.size();
    for (std::size_t i = 0; i < len; ++i)
        if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
    for (std::size_t half = 1; half < len; half <<= 1) {
        const std::size_t stride = len / (2 * half);
        for (std::size_t start = 0; start < len; start += 2 * half) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = twiddles_[k * stride];
                if (inverse) w = std::conj(w);
                const cplx t = w * data[start + k + half];
                data[start + k + half] = data[start + k] - t;
                data[start + k] += t;
            }
        }
    }
}

void FftPlan::execute(std::span<cplx> data, TransformDirection dir, std::span<cplx> scratch) const {
    if (data.size() != n_) throw DimensionError("FftPlan::execute: length mismatch");
    const bool inverse = dir == TransformDirection::inverse;
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_));

    if (!bluestein_len_) {
        radix2(data, inverse);
        for (cplx& v : data) v *= norm;
        return;
    }

    if (scratch.size() < bluestein_len_) throw DimensionError("FftPlan::execute: scratch too small");
    // The inverse DFT is conj(DFT(conj(x))).
    auto work = scratch.first(bluestein_len_);
    for (std::size_t k = 0; k < n_; ++k) work[k] = (inverse ? std::conj(data[k]) : data[k]) * chirp_[k];
    std::fill(work.begin() + static_cast<std::ptrdiff_t>(n_), work.end(), cplx(0));
    radix2(work, false);
    for (std::size_t k = 0; k < bluestein_len_; ++k) work[k] *= chirp_filter_[k];
    radix2(work, true);
    const double conv_norm = norm / static_cast<double>(bluestein_len_);
    for (std::size_t k = 0; k < n_; ++k) {
        const cplx y = work[k] * chirp_[k] * conv_norm;
        data[k] = inverse ? std::conj(y) : y;
    }
}

template <Scalar T>
void walsh_hadamard(std::span<T> data) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) throw DimensionError("walsh_hadamard: length must be a power of two");
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t start = 0; start < n; start += 2 * half) {
            for (std::size_t k = start; k < start + half; ++k) {
                const T a = data[k];
                const T b = data[k + half];
                data[k] = a + b;
                data[k + half] = a - b;
            }
        }
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (T& v : data) v *= norm;
}

template void walsh_hadamard<double>(std::span<double>);
template void walsh_hadamard<cplx>(std::span<cplx>);

}  // namespace srlu
