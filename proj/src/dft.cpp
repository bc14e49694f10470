#include "sfft/dft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfft {

namespace {

void bit_reverse(std::span<cplx> data) {
    const std::size_t n = data.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1U;
        for (; j & bit; bit >>= 1U) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(data[i], data[j]);
        }
    }
}

// Iterative Cooley-Tukey with a precomputed half-length root table.
void fft_with_roots(std::span<cplx> data, std::span<const cplx> roots, bool inverse) {
    const std::size_t n = data.size();
    bit_reverse(data);
    for (std::size_t len = 2; len <= n; len <<= 1U) {
        const std::size_t half = len >> 1U;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = roots[k * stride];
                if (inverse) {
                    w = std::conj(w);
                }
                const cplx u = data[start + k];
                const cplx v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
}

std::vector<cplx> half_roots(std::size_t n) {
    std::vector<cplx> roots(n / 2 == 0 ? 1 : n / 2);
    for (std::size_t r = 0; r < roots.size(); ++r) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
        roots[r] = std::polar(1.0, angle);
    }
    return roots;
}

} // namespace

void fft_radix2(std::span<cplx> data, bool inverse) {
    if (data.empty()) {
        return;
    }
    if (!std::has_single_bit(data.size())) {
        throw std::invalid_argument("fft_radix2: length must be a power of two");
    }
    const auto roots = half_roots(data.size());
    fft_with_roots(data, roots, inverse);
}

DftPlan::DftPlan(std::size_t n, std::size_t direct_threshold) : n_(n) {
    if (n == 0) {
        throw std::invalid_argument("DftPlan: length must be >= 1");
    }
    if (n < direct_threshold) {
        roots_.resize(n);
        for (std::size_t r = 0; r < n; ++r) {
            roots_[r] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
        }
        return;
    }

    padded_ = std::bit_ceil(2 * n - 1);
    fft_roots_ = half_roots(padded_);

    // k^2 reduced mod 2n keeps the chirp angle small and exact.
    chirp_.resize(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t sq = (static_cast<std::uint64_t>(k) * k) % two_n;
        chirp_[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n));
    }

    filter_fft_.assign(padded_, cplx{});
    filter_fft_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
        filter_fft_[k] = std::conj(chirp_[k]);
        filter_fft_[padded_ - k] = std::conj(chirp_[k]);
    }
    fft_with_roots(filter_fft_, fft_roots_, false);
}

void DftPlan::execute(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != n_ || out.size() != n_) {
        throw std::invalid_argument("DftPlan::execute: buffer length mismatch");
    }
    if (padded_ == 0) {
        for (std::size_t h = 0; h < n_; ++h) {
            cplx acc{};
            std::size_t idx = 0; // h * k mod n, advanced incrementally
            for (std::size_t k = 0; k < n_; ++k) {
                acc += in[k] * roots_[idx];
                idx += h;
                if (idx >= n_) {
                    idx -= n_;
                }
            }
            out[h] = acc;
        }
        return;
    }

    std::vector<cplx> work(padded_, cplx{});
    for (std::size_t k = 0; k < n_; ++k) {
        work[k] = in[k] * chirp_[k];
    }
    fft_with_roots(work, fft_roots_, false);
    for (std::size_t i = 0; i < padded_; ++i) {
        work[i] *= filter_fft_[i];
    }
    fft_with_roots(work, fft_roots_, true);
    const double scale = 1.0 / static_cast<double>(padded_);
    for (std::size_t h = 0; h < n_; ++h) {
        out[h] = work[h] * scale * chirp_[h];
    }
}

std::vector<cplx> DftPlan::operator()(std::span<const cplx> in) const {
    std::vector<cplx> out(n_);
    execute(in, out);
    return out;
}

std::vector<cplx> dft_arbitrary_length(std::span<const cplx> samples) {
    return DftPlan(samples.size())(samples);
}

} // namespace sfft
