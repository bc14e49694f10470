#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sfft/types.hpp"

namespace sfft {

/// Random spectrum of length N drawn from a compressibility class.
///
/// exact:       `sparsity` distinct frequencies, magnitudes in [1, 2].
/// algebraic:   every index gets magnitude c * b^-p, b = 1..N, in random order.
/// exponential: likewise with c * 2^(-alpha b).
/// Phases are uniform. The result depends only on (N, model, seed, window).
[[nodiscard]] ExplicitSpectrum gen_signal(std::uint64_t n, const CompressibilityModel& model, std::uint64_t seed,
                                          Window convention = Window::unsigned_window);

/// Unitary DFT by direct summation: (1/sqrt N) sum_j exp(-2 pi i w j / N) A(j).
[[nodiscard]] std::vector<cplx> oracle_dft(std::span<const cplx> time_vector);
[[nodiscard]] std::vector<cplx> oracle_idft(std::span<const cplx> spectrum);

struct TopTerms {
    SparseRepresentation rep;
    double tail_energy = 0.0; ///< sum of |A(w_b)|^2 over b > B
};

/// The B largest-magnitude entries (ties go to the smaller frequency) and
/// the energy left outside them.
[[nodiscard]] TopTerms oracle_top_b(const ExplicitSpectrum& spectrum, std::size_t B);

/// Magnitudes sorted in descending order.
[[nodiscard]] std::vector<double> sorted_magnitudes(const ExplicitSpectrum& spectrum);

/// Squared l2 distance between the spectrum and the zero-extended representation.
[[nodiscard]] double error_l2(const ExplicitSpectrum& spectrum, const SparseRepresentation& rep);

/// Local polynomial interpolation of a periodic grid at t in [0, 2 pi).
///
/// Fits degree 2kappa-1 polynomials through the 2kappa nearest grid values
/// (wrapping around the period), separately for the real and imaginary
/// parts, and evaluates them at t in barycentric form. On-grid t returns the
/// stored sample. Requires N >= 4 kappa.
[[nodiscard]] cplx interpolate_sample(const ExplicitTimeVector& time_vector, double t, unsigned kappa);

/// Same kernel addressed in grid units: position = floor_index + frac,
/// frac in [0, 1).
[[nodiscard]] cplx interpolate_at(std::span<const cplx> grid, std::uint64_t floor_index, double frac,
                                  unsigned kappa);

/// kappa = ceil((log2(1/delta) + p) / 2) + 1.
[[nodiscard]] unsigned default_kappa(double delta, double p);

/// Treats the spectrum as Fourier series coefficients c_w and returns
/// f(2 pi j / N) = sum_w c_w exp(i w 2 pi j / N) for j in [0, N).
[[nodiscard]] ExplicitTimeVector synthesize_time_vector(const ExplicitSpectrum& coefficients);

/// f(x) = sum_w c_w exp(i w x) over the nonzero entries, signed frequencies.
[[nodiscard]] FunctionSampler trig_polynomial(const ExplicitSpectrum& coefficients);
/// Same from an explicit term list; every frequency must lie in the signed
/// window of size `bandwidth`.
[[nodiscard]] FunctionSampler trig_polynomial(std::vector<Term> terms, std::uint64_t bandwidth);

enum class SignalDomain { spectrum, time };

/// CSV signal file: a header row "spectrum,<window>" or "time", then one
/// "re,im" line per index.
struct SignalFile {
    SignalDomain domain = SignalDomain::spectrum;
    Window convention = Window::unsigned_window;
    std::vector<cplx> values;
};

void write_signal_csv(std::ostream& os, const SignalFile& signal);
/// Throws std::runtime_error on malformed input.
[[nodiscard]] SignalFile read_signal_csv(std::istream& is);

} // namespace sfft
