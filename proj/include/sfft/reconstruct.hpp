#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sfft/design.hpp"
#include "sfft/measurement.hpp"
#include "sfft/types.hpp"

namespace sfft {

/// One frequency reconstructed from a single q-prime's anchor bin.
struct Candidate {
    std::int64_t omega = 0;
    std::size_t j = 0;    ///< 0-based q-prime index
    std::size_t rank = 1; ///< 1-based position of the anchor in the sorted coarse bins
    cplx anchor_value{};
};

struct RecoveryParameters {
    std::size_t B = 1;       ///< terms returned
    std::size_t B_prime = 2; ///< separation sparsity used to build the plan
    double C = 1.0;          ///< precision constant, >= 1
    std::optional<double> epsilon;
};

/// Residue voting and CRT reconstruction over every q-prime.
///
/// For each j the B'+1 largest coarse bins (stable by residue on ties) are
/// lifted through every p-prime by picking the fine bin closest to the
/// anchor; the residues are fused by CRT and kept when they have a unique
/// representative in the window. Duplicates are preserved, ordered by j then
/// rank.
[[nodiscard]] std::vector<Candidate> identify(const MeasurementSet& ms, std::size_t B_prime, unsigned threads = 1);

/// Number of times each frequency was reconstructed.
[[nodiscard]] std::map<std::int64_t, std::size_t> candidate_counts(std::span<const Candidate> candidates);

/// Median of values; an even count averages the two middle order statistics.
[[nodiscard]] double median(std::vector<double> values);

/// Keeps frequencies reconstructed strictly more than 2K/3 times, estimates
/// each by coordinate-wise medians of its anchors and returns the B largest.
[[nodiscard]] SparseRepresentation estimate(std::span<const Candidate> candidates, const PrimePlan& plan,
                                            std::size_t B, Window convention);

struct EpsilonBPrime {
    double epsilon = 0.0;
    std::size_t B_prime = 0;
};

/// epsilon = |A(w_B)| / (sqrt(2) C) and the smallest 1-based B' whose tail
/// 1-norm is below epsilon/2. Returns B' = N when no index qualifies.
[[nodiscard]] EpsilonBPrime compute_epsilon_bprime(std::span<const double> sorted_magnitudes, std::size_t B,
                                                   double C);

/// Class-level parameters guaranteeing error <= optimal + delta * tail.
[[nodiscard]] RecoveryParameters select_parameters(std::size_t B, double delta, const CompressibilityModel& model);

struct PhaseTimings {
    double measure_ms = 0.0;
    double identify_ms = 0.0;
    double estimate_ms = 0.0;
};

struct RecoveryReport {
    PrimePlan plan;
    Window convention = Window::unsigned_window;
    std::uint64_t sample_count = 0;
    std::size_t total_candidates = 0;
    std::size_t distinct_candidates = 0;
    std::map<std::int64_t, std::size_t> accepted_counts; ///< frequencies above the majority threshold
    PhaseTimings timings;
};

struct ApproximateOptions {
    unsigned threads = 1;
    unsigned kappa = 8; ///< interpolation half-width for time-vector sources
    bool keep_measurements = false;
};

struct Recovery {
    SparseRepresentation rep;
    RecoveryReport report;
    std::optional<MeasurementSet> measurements;
};

/// Plans for (N, B'), measures along the path matching the source, then
/// identifies and estimates. Spectrum sources keep their window; function
/// and time-vector sources use the signed window.
[[nodiscard]] Recovery sparse_approximate(const SignalSource& source, const RecoveryParameters& params,
                                          const ApproximateOptions& options = {});

} // namespace sfft
