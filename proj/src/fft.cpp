#include "indicatrix/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace indicatrix {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_inplace(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_inplace: length must be a power of two");
    if (n < 2) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void fft2_inplace(std::vector<std::complex<double>>& data, std::size_t rows,
                  std::size_t cols, int sign) {
    if (data.size() != rows * cols)
        throw std::invalid_argument("fft2_inplace: size mismatch");
    std::vector<std::complex<double>> scratch;

    for (std::size_t r = 0; r < rows; ++r) {
        scratch.assign(data.begin() + r * cols, data.begin() + (r + 1) * cols);
        fft_inplace(scratch, sign);
        std::copy(scratch.begin(), scratch.end(), data.begin() + r * cols);
    }
    for (std::size_t c = 0; c < cols; ++c) {
        scratch.resize(rows);
        for (std::size_t r = 0; r < rows; ++r) scratch[r] = data[r * cols + c];
        fft_inplace(scratch, sign);
        for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = scratch[r];
    }
}

} // namespace indicatrix
