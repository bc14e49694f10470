#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sfft/design.hpp"
#include "sfft/types.hpp"

namespace sfft {

/// Every aliased residue sum <chi_{S_{l,j,h}}, A> for one plan.
///
/// bins(j, l)[h] holds the plain sum of the spectrum entries whose frequency
/// is congruent to h modulo q_j * p_l. The function path divides each
/// length-n DFT by n so both paths yield the same numbers: sums of Fourier
/// series coefficients. To compare with a unitary length-N DFT (the oracle),
/// multiply oracle values by 1/sqrt(N).
class MeasurementSet {
public:
    MeasurementSet(PrimePlan plan, Window convention);

    [[nodiscard]] const PrimePlan& plan() const noexcept { return plan_; }
    [[nodiscard]] Window convention() const noexcept { return convention_; }
    [[nodiscard]] std::uint64_t sample_count() const noexcept { return sample_count_; }
    void set_sample_count(std::uint64_t count) noexcept { sample_count_ = count; }

    [[nodiscard]] std::span<const cplx> bins(std::size_t j, std::size_t l) const;
    [[nodiscard]] std::span<cplx> bins(std::size_t j, std::size_t l);

    /// Number of (j, l) pairs, K * (m + 1).
    [[nodiscard]] std::size_t pair_count() const noexcept { return offsets_.size() - 1; }

private:
    [[nodiscard]] std::size_t pair_index(std::size_t j, std::size_t l) const;

    PrimePlan plan_;
    Window convention_;
    std::uint64_t sample_count_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<cplx> storage_;
};

/// Direct residue sums over an explicit spectrum. Throws std::invalid_argument
/// when the spectrum length differs from plan.n().
[[nodiscard]] MeasurementSet measure_vector(const ExplicitSpectrum& spectrum, const PrimePlan& plan,
                                            unsigned threads = 1);

/// Aliased DFTs of q_j p_l equispaced samples for every (j, l), including
/// l = 0. Uses the signed window; sample_count equals total_measurements().
[[nodiscard]] MeasurementSet measure_function(const FunctionSampler& sampler, const PrimePlan& plan,
                                              unsigned threads = 1);

/// As measure_function, with each off-grid sample produced by local
/// interpolation on 2*kappa neighbouring grid values. Requires N >= 4 kappa.
[[nodiscard]] MeasurementSet measure_from_grid(const ExplicitTimeVector& time_vector, const PrimePlan& plan,
                                               unsigned kappa, unsigned threads = 1);

} // namespace sfft
