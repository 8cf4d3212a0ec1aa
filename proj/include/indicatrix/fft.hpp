#ifndef INDICATRIX_FFT_HPP
#define INDICATRIX_FFT_HPP

#include <complex>
#include <vector>

namespace indicatrix {

// In-place radix-2 transform, sign = -1 for the forward e^{-i...} kernel.
// No normalization is applied. Length must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data, int sign);

// Row-column 2-D transform of a rows x cols row-major array.
void fft2_inplace(std::vector<std::complex<double>>& data, std::size_t rows,
                  std::size_t cols, int sign);

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
std::size_t next_pow2(std::size_t n);

} // namespace indicatrix

#endif
