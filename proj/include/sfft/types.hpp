#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sfft/window.hpp"

namespace sfft {

using cplx = std::complex<double>;

struct Term {
    std::int64_t omega = 0;
    cplx coeff{};
};

/// A short list of (frequency, coefficient) pairs standing for a length-N
/// spectrum that is zero everywhere else.
struct SparseRepresentation {
    std::vector<Term> terms; ///< distinct omegas, largest magnitude first
    Window convention = Window::unsigned_window;
    std::size_t B = 0;
};

/// A length-N spectrum indexed by storage position; see Window for how
/// positions map to frequencies.
struct ExplicitSpectrum {
    std::vector<cplx> values;
    Window convention = Window::unsigned_window;

    [[nodiscard]] std::uint64_t size() const noexcept { return values.size(); }
    [[nodiscard]] FrequencyWindow window() const { return FrequencyWindow(values.size(), convention); }
};

/// f sampled on the uniform grid x_j = 2 pi j / N, j in [0, N).
struct ExplicitTimeVector {
    std::vector<cplx> values;
};

/// A periodic function on [0, 2 pi) that can be sampled anywhere. The
/// callable must be pure and safe to call concurrently. `bandwidth` is the
/// N of the signed frequency window that recovery searches.
struct FunctionSampler {
    std::function<cplx(double)> f;
    std::uint64_t bandwidth = 0;
};

using SignalSource = std::variant<ExplicitSpectrum, ExplicitTimeVector, FunctionSampler>;

/// Exactly `sparsity` nonzero coefficients.
struct ExactSparse {
    std::size_t sparsity = 1;
};
/// Sorted magnitudes c * b^-p.
struct Algebraic {
    double p = 2.0;
    double c = 1.0;
};
/// Sorted magnitudes c * 2^(-alpha b).
struct Exponential {
    double alpha = 1.0;
    double c = 1.0;
};

using CompressibilityModel = std::variant<ExactSparse, Algebraic, Exponential>;

/// Throws std::invalid_argument when a parameter is out of range.
void validate(const CompressibilityModel& model);

/// Parses "exact:B=2", "algebraic:p=3,c=1" or "exponential:alpha=1,c=1".
[[nodiscard]] CompressibilityModel parse_model(std::string_view text);
[[nodiscard]] std::string describe(const CompressibilityModel& model);

} // namespace sfft
