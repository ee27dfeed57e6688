#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace configdensity::detail {

/// Unnormalised in-place complex DFT over a row-major array of up to three
/// axes (unused axes have extent 1). sign = -1 is the forward transform
/// sum_j x_j e^{-2 pi i jk/N}; sign = +1 the backward one.
void fft_inplace(std::vector<std::complex<double>>& data,
                 const std::array<std::size_t, 3>& shape, int dim, int sign);

}  // namespace configdensity::detail
