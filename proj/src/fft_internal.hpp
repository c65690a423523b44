#pragma once

#include <complex>
#include <vector>

namespace fsscomp::detail {

// In-place 2-D FFT on an n x n row-major buffer; sign is FFTW_FORWARD (-1)
// or FFTW_BACKWARD (+1), unnormalized.
void fft2d_inplace(std::vector<std::complex<double>>& buf, int n, int sign);

// In-place 1-D FFT on a length-m contiguous buffer.
void fft1d_inplace(std::complex<double>* data, int m, int sign);

}  // namespace fsscomp::detail
