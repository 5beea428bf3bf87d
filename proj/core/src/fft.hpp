#pragma once

#include <span>

#include "ddcap/signal.hpp"

namespace ddcap::detail {

enum class FftSign : int { negative = -1, positive = +1 };

// Unnormalized DFT out[k] = sum_n in[n] exp(sign * 2 pi i k n / N), backed by
// FFTW. Plans are cached per (N, sign); safe to call from several threads.
ComplexVector dft(std::span<const Complex> in, FftSign sign);

}  // namespace ddcap::detail
