#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "eitsim/constants.hpp"
#include "eitsim/errors.hpp"

namespace eitsim {

inline bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

// In-place radix-2 FFT.  direction = -1 computes the forward transform
// X_k = sum_n x_n exp(-2 pi i k n / N); direction = +1 the unscaled inverse
// exponent (divide by N afterwards to invert).  N must be a power of two.
inline void fft_radix2(std::vector<std::complex<double>>& data, int direction) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) throw InvalidInput("fft_radix2: size must be a power of two >= 2");
    if (direction != 1 && direction != -1)
        throw InvalidInput("fft_radix2: direction must be +1 or -1");

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = direction * two_pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline std::vector<std::complex<double>> fft(std::vector<std::complex<double>> data) {
    fft_radix2(data, -1);
    return data;
}

inline std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> data) {
    fft_radix2(data, +1);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& z : data) z *= inv;
    return data;
}

// Kramers-Kronig reconstruction of the real part from uniformly sampled
// imaginary part:  Re chi(d) = (1/pi) PV integral Im chi(d') / (d' - d) dd',
// evaluated spectrally as the Fourier multiplier +i sgn(frequency).  The
// input length must be a power of two and the grid must extend well past the
// spectral structure; values near the grid edges inherit the periodic
// wrap-around of the DFT and should not be compared.
inline std::vector<double> kk_real_from_imag(const std::vector<double>& im) {
    const std::size_t n = im.size();
    if (!is_power_of_two(n)) throw InvalidInput("kk_real_from_imag: size must be a power of two");
    std::vector<std::complex<double>> work(n);
    for (std::size_t i = 0; i < n; ++i) work[i] = im[i];
    fft_radix2(work, -1);
    work[0] = 0.0;
    work[n / 2] = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        work[k] *= std::complex<double>(0.0, 1.0);
        work[n - k] *= std::complex<double>(0.0, -1.0);
    }
    fft_radix2(work, +1);
    std::vector<double> out(n);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = work[i].real() * inv;
    return out;
}

} // namespace eitsim
