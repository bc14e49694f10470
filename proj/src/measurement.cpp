#include "sfft/measurement.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "sfft/dft.hpp"
#include "sfft/number_theory.hpp"
#include "sfft/signals.hpp"

namespace sfft {

MeasurementSet::MeasurementSet(PrimePlan plan, Window convention)
    : plan_(std::move(plan)), convention_(convention) {
    offsets_.reserve(plan_.K() * (plan_.m() + 1) + 1);
    std::size_t offset = 0;
    offsets_.push_back(offset);
    for (std::size_t j = 0; j < plan_.K(); ++j) {
        for (std::size_t l = 0; l <= plan_.m(); ++l) {
            offset += plan_.modulus(j, l);
            offsets_.push_back(offset);
        }
    }
    storage_.assign(offset, cplx{});
}

std::size_t MeasurementSet::pair_index(std::size_t j, std::size_t l) const {
    if (j >= plan_.K() || l > plan_.m()) {
        throw std::out_of_range("measurement set: (j, l) out of range");
    }
    return j * (plan_.m() + 1) + l;
}

std::span<const cplx> MeasurementSet::bins(std::size_t j, std::size_t l) const {
    const std::size_t idx = pair_index(j, l);
    return std::span<const cplx>(storage_).subspan(offsets_[idx], offsets_[idx + 1] - offsets_[idx]);
}

std::span<cplx> MeasurementSet::bins(std::size_t j, std::size_t l) {
    const std::size_t idx = pair_index(j, l);
    return std::span<cplx>(storage_).subspan(offsets_[idx], offsets_[idx + 1] - offsets_[idx]);
}

MeasurementSet measure_vector(const ExplicitSpectrum& spectrum, const PrimePlan& plan, unsigned threads) {
    if (spectrum.size() != plan.n()) {
        throw std::invalid_argument("measure_vector: spectrum length " + std::to_string(spectrum.size()) +
                                    " does not match plan N " + std::to_string(plan.n()));
    }
    const FrequencyWindow window = spectrum.window();

    struct Entry {
        std::int64_t omega;
        cplx value;
    };
    std::vector<Entry> support;
    for (std::uint64_t i = 0; i < spectrum.size(); ++i) {
        if (spectrum.values[i] != cplx{}) {
            support.push_back({window.frequency_at(i), spectrum.values[i]});
        }
    }

    MeasurementSet ms(plan, spectrum.convention);
    const std::size_t pairs = ms.pair_count();
    const std::size_t stride = plan.m() + 1;
    detail::parallel_for(pairs, threads, [&](std::size_t pair) {
        const std::size_t j = pair / stride;
        const std::size_t l = pair % stride;
        const std::uint64_t modulus = plan.modulus(j, l);
        auto bins = ms.bins(j, l);
        for (const Entry& e : support) {
            bins[mod_floor(e.omega, modulus)] += e.value;
        }
    });
    ms.set_sample_count(plan.n());
    return ms;
}

namespace {

template <class SampleAt>
MeasurementSet measure_aliased(const PrimePlan& plan, unsigned threads, SampleAt&& sample_at) {
    MeasurementSet ms(plan, Window::signed_window);
    const std::size_t stride = plan.m() + 1;
    detail::parallel_for(ms.pair_count(), threads, [&](std::size_t pair) {
        const std::size_t j = pair / stride;
        const std::size_t l = pair % stride;
        const std::uint64_t n = plan.modulus(j, l);
        std::vector<cplx> samples(n);
        for (std::uint64_t k = 0; k < n; ++k) {
            samples[k] = sample_at(k, n);
        }
        const DftPlan dft(n);
        auto bins = ms.bins(j, l);
        dft.execute(samples, bins);
        const double scale = 1.0 / static_cast<double>(n);
        for (cplx& b : bins) {
            b *= scale;
        }
    });
    ms.set_sample_count(plan.total_measurements());
    return ms;
}

} // namespace

MeasurementSet measure_function(const FunctionSampler& sampler, const PrimePlan& plan, unsigned threads) {
    if (!sampler.f) {
        throw std::invalid_argument("measure_function: empty sampler");
    }
    return measure_aliased(plan, threads, [&](std::uint64_t k, std::uint64_t n) {
        const double t = 2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(n));
        return sampler.f(t);
    });
}

MeasurementSet measure_from_grid(const ExplicitTimeVector& time_vector, const PrimePlan& plan, unsigned kappa,
                                 unsigned threads) {
    const std::uint64_t grid = time_vector.values.size();
    if (kappa == 0 || grid < 4ULL * kappa) {
        throw std::invalid_argument("measure_from_grid: need kappa >= 1 and N >= 4 kappa");
    }
    const std::span<const cplx> values(time_vector.values);
    return measure_aliased(plan, threads, [&](std::uint64_t k, std::uint64_t n) {
        // Sample position in grid units: k * N / n.
        const u128 scaled = static_cast<u128>(k) * grid;
        const auto whole = static_cast<std::uint64_t>(scaled / n);
        const auto rest = static_cast<std::uint64_t>(scaled % n);
        if (rest == 0) {
            return values[whole];
        }
        return interpolate_at(values, whole, static_cast<double>(rest) / static_cast<double>(n), kappa);
    });
}

} // namespace sfft
