#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sfft {

using cplx = std::complex<double>;

/// Lengths below this use the direct O(n^2) sum; longer ones go through a
/// Bluestein chirp-z convolution on a power-of-two FFT.
inline constexpr std::size_t kDirectDftThreshold = 256;

/// Unnormalized forward DFT of a fixed, arbitrary length:
///   X[h] = sum_k x[k] exp(-2 pi i h k / n).
/// A plan is immutable after construction and may be shared across threads.
class DftPlan {
public:
    explicit DftPlan(std::size_t n, std::size_t direct_threshold = kDirectDftThreshold);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] bool uses_chirp_z() const noexcept { return padded_ != 0; }

    void execute(std::span<const cplx> in, std::span<cplx> out) const;
    [[nodiscard]] std::vector<cplx> operator()(std::span<const cplx> in) const;

private:
    std::size_t n_;
    std::size_t padded_ = 0;       // power of two >= 2n - 1, or 0 on the direct path
    std::vector<cplx> roots_;      // exp(-2 pi i r / n), direct path
    std::vector<cplx> chirp_;      // exp(-i pi k^2 / n), k < n
    std::vector<cplx> filter_fft_; // FFT of the conjugate chirp, length padded_
    std::vector<cplx> fft_roots_;  // exp(-2 pi i r / padded_), r < padded_/2
};

[[nodiscard]] std::vector<cplx> dft_arbitrary_length(std::span<const cplx> samples);

/// In-place radix-2 FFT; size must be a power of two. `inverse` flips the
/// exponent sign and does not scale.
void fft_radix2(std::span<cplx> data, bool inverse = false);

} // namespace sfft
