#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sfft/measurement.hpp"
#include "sfft/number_theory.hpp"
#include "sfft/signals.hpp"

using namespace sfft;

namespace {

ExplicitSpectrum random_sparse(std::uint64_t n, std::size_t count, Window w, std::mt19937_64& rng) {
    ExplicitSpectrum s{std::vector<cplx>(n), w};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < count; ++i) {
        s.values[rng() % n] = {u(rng), u(rng)};
    }
    return s;
}

// Residue sum over every frequency congruent to h, straight from the definition.
cplx residue_sum(const ExplicitSpectrum& s, std::uint64_t modulus, std::uint64_t h) {
    const FrequencyWindow w = s.window();
    cplx sum{};
    for (std::int64_t omega = w.lowest(); omega <= w.highest(); ++omega) {
        if (mod_floor(omega, modulus) == h) {
            sum += s.values[w.index_of(omega)];
        }
    }
    return sum;
}

double max_bin_gap(const MeasurementSet& a, const MeasurementSet& b) {
    double gap = 0.0;
    const PrimePlan& plan = a.plan();
    for (std::size_t j = 0; j < plan.K(); ++j) {
        for (std::size_t l = 0; l <= plan.m(); ++l) {
            const auto x = a.bins(j, l);
            const auto y = b.bins(j, l);
            for (std::size_t h = 0; h < x.size(); ++h) {
                gap = std::max(gap, std::abs(x[h] - y[h]) / (1.0 + std::abs(x[h])));
            }
        }
    }
    return gap;
}

} // namespace

TEST_CASE("vector path equals residue sums") {
    std::mt19937_64 rng(21);
    for (Window w : {Window::unsigned_window, Window::signed_window}) {
        const PrimePlan plan = plan_parameters(210, 2);
        const ExplicitSpectrum s = random_sparse(210, 30, w, rng);
        const MeasurementSet ms = measure_vector(s, plan);
        CHECK(ms.sample_count() == 210);
        CHECK(ms.pair_count() == plan.K() * (plan.m() + 1));
        for (std::size_t j = 0; j < plan.K(); j += 7) {
            for (std::size_t l = 0; l <= plan.m(); ++l) {
                const auto bins = ms.bins(j, l);
                REQUIRE(bins.size() == plan.modulus(j, l));
                for (std::uint64_t h = 0; h < bins.size(); ++h) {
                    CHECK(std::abs(bins[h] - residue_sum(s, plan.modulus(j, l), h)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("fine bins telescope onto coarse bins") {
    std::mt19937_64 rng(22);
    const PrimePlan plan = plan_parameters(1000, 5);
    const ExplicitSpectrum s = random_sparse(1000, 200, Window::unsigned_window, rng);
    const MeasurementSet ms = measure_vector(s, plan);
    for (std::size_t j = 0; j < plan.K(); ++j) {
        const std::uint64_t q = plan.q(j);
        for (std::size_t l = 1; l <= plan.m(); ++l) {
            for (std::uint64_t h = 0; h < q; ++h) {
                cplx sum{};
                for (std::uint64_t b = 0; b < plan.p(l); ++b) {
                    sum += ms.bins(j, l)[h + b * q];
                }
                CHECK(std::abs(sum - ms.bins(j, 0)[h]) < 1e-12);
            }
        }
    }
}

TEST_CASE("function path aliases like the vector path") {
    std::mt19937_64 rng(23);
    for (std::uint64_t n : {30ULL, 257ULL, 1000ULL}) {
        CAPTURE(n);
        const PrimePlan plan = plan_parameters(n, 2);
        const ExplicitSpectrum s = random_sparse(n, 5, Window::signed_window, rng);
        const MeasurementSet direct = measure_vector(s, plan);
        const MeasurementSet sampled = measure_function(trig_polynomial(s), plan);
        CHECK(sampled.sample_count() == plan.total_measurements());
        CHECK(sampled.convention() == Window::signed_window);
        CHECK(max_bin_gap(direct, sampled) <= 1e-9);
    }
}

TEST_CASE("thread count does not change the bins") {
    std::mt19937_64 rng(24);
    const PrimePlan plan = plan_parameters(512, 2);
    const ExplicitSpectrum s = random_sparse(512, 4, Window::signed_window, rng);
    const auto f = trig_polynomial(s);
    const MeasurementSet one = measure_function(f, plan, 1);
    const MeasurementSet four = measure_function(f, plan, 4);
    CHECK(max_bin_gap(one, four) == 0.0);
}

TEST_CASE("grid path converges with kappa") {
    const std::uint64_t n = 4096;
    const PrimePlan plan = plan_parameters(n, 2);
    ExplicitSpectrum s{std::vector<cplx>(n), Window::signed_window};
    s.values[s.window().index_of(37)] = {1.0, 0.5};
    s.values[s.window().index_of(-101)] = {-0.7, 1.2};
    const MeasurementSet exact = measure_function(trig_polynomial(s), plan);
    const ExplicitTimeVector tv = synthesize_time_vector(s);
    double previous = 1e300;
    for (unsigned kappa : {2U, 4U, 6U, 8U}) {
        const double gap = max_bin_gap(exact, measure_from_grid(tv, plan, kappa));
        CHECK(gap < previous);
        previous = gap;
    }
    CHECK(previous < 1e-8);
}

TEST_CASE("measurement errors") {
    const PrimePlan plan = plan_parameters(100, 2);
    CHECK_THROWS_AS((void)measure_vector(ExplicitSpectrum{std::vector<cplx>(99)}, plan), std::invalid_argument);
    CHECK_THROWS_AS((void)measure_function(FunctionSampler{}, plan), std::invalid_argument);
    CHECK_THROWS_AS((void)measure_from_grid(ExplicitTimeVector{std::vector<cplx>(100)}, plan, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)measure_from_grid(ExplicitTimeVector{std::vector<cplx>(100)}, plan, 26),
                    std::invalid_argument);
}
