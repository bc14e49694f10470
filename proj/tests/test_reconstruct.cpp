#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sfft/reconstruct.hpp"
#include "sfft/signals.hpp"

using namespace sfft;

namespace {

ExplicitSpectrum planted(std::uint64_t n, const std::vector<std::pair<std::int64_t, cplx>>& terms, Window w) {
    ExplicitSpectrum s{std::vector<cplx>(n), w};
    const FrequencyWindow win = s.window();
    for (const auto& [omega, c] : terms) {
        s.values[win.index_of(omega)] = c;
    }
    return s;
}

std::vector<Candidate> fake_candidates(std::int64_t omega, std::size_t count, cplx value) {
    return std::vector<Candidate>(count, Candidate{omega, 0, 1, value});
}

} // namespace

TEST_CASE("a single tone is reconstructed by every q-prime") {
    const PrimePlan plan = plan_parameters(1000, 2);
    const auto spec = planted(1000, {{417, {0.6, -0.8}}}, Window::unsigned_window);
    const auto candidates = identify(measure_vector(spec, plan), 2);
    const auto counts = candidate_counts(candidates);
    CHECK(counts.at(417) == plan.K());

    const SparseRepresentation rep = estimate(candidates, plan, 1, Window::unsigned_window);
    REQUIRE(rep.terms.size() == 1);
    CHECK(rep.terms[0].omega == 417);
    CHECK(std::abs(rep.terms[0].coeff - cplx{0.6, -0.8}) < 1e-12);
}

TEST_CASE("planted frequencies clear the majority in the coincident plan") {
    // plan(1000, 4) starts its q-primes at p_m = 7.
    const PrimePlan plan = plan_parameters(1000, 4);
    CHECK(plan.q(0) == plan.p(plan.m()));
    const auto spec = planted(1000, {{3, 1.0}, {10, {0.0, 1.5}}, {703, -1.2}}, Window::unsigned_window);
    const auto counts = candidate_counts(identify(measure_vector(spec, plan), 4));
    for (std::int64_t omega : {3, 10, 703}) {
        CAPTURE(omega);
        CHECK(plan.exceeds_majority(counts.at(omega)));
    }
}

TEST_CASE("signed window recovery of negative frequencies") {
    const PrimePlan plan = plan_parameters(4096, 3);
    const auto spec = planted(4096, {{-2048 + 1, {1.0, 1.0}}, {-5, 2.0}}, Window::signed_window);
    const auto rep = estimate(identify(measure_vector(spec, plan), 3), plan, 2, Window::signed_window);
    REQUIRE(rep.terms.size() == 2);
    CHECK(rep.terms[0].omega == -5);
    CHECK(rep.terms[1].omega == -2047);
}

TEST_CASE("identify rejects a plan built for another sparsity") {
    const PrimePlan plan = plan_parameters(100, 3);
    const auto ms = measure_vector(ExplicitSpectrum{std::vector<cplx>(100)}, plan);
    CHECK_THROWS_AS((void)identify(ms, 2), std::invalid_argument);
}

TEST_CASE("identify is independent of the thread count") {
    const PrimePlan plan = plan_parameters(4096, 4);
    const auto spec = gen_signal(4096, Algebraic{3.0, 1.0}, 17);
    const auto ms = measure_vector(spec, plan);
    const auto one = identify(ms, 4, 1);
    const auto many = identify(ms, 4, 5);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].omega == many[i].omega);
        CHECK(one[i].j == many[i].j);
        CHECK(one[i].rank == many[i].rank);
    }
}

TEST_CASE("estimate threshold is strict") {
    const PrimePlan plan = plan_parameters(1000, 5); // K = 61: 40 fails, 41 passes
    auto candidates = fake_candidates(12, 40, 1.0);
    CHECK(estimate(candidates, plan, 3, Window::unsigned_window).terms.empty());
    candidates.push_back({12, 0, 1, 1.0});
    CHECK(estimate(candidates, plan, 3, Window::unsigned_window).terms.size() == 1);
}

TEST_CASE("estimate keeps the B largest and uses coordinate medians") {
    const PrimePlan plan = plan_parameters(1000, 5);
    std::vector<Candidate> c;
    for (std::int64_t omega : {1, 2, 3}) {
        for (int i = 0; i < 50; ++i) {
            c.push_back({omega, 0, 1, cplx{static_cast<double>(omega), static_cast<double>(i % 5)}});
        }
    }
    const auto rep = estimate(c, plan, 2, Window::unsigned_window);
    REQUIRE(rep.terms.size() == 2);
    CHECK(rep.terms[0].omega == 3);
    CHECK(rep.terms[1].omega == 2);
    CHECK(rep.terms[0].coeff == cplx{3.0, 2.0});
    CHECK(rep.B == 2);
}

TEST_CASE("median") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK(median({-1.0}) == -1.0);
    CHECK_THROWS((void)median({}));
}

TEST_CASE("compute_epsilon_bprime") {
    const std::vector<double> sparse = {2.0, 1.5, 1.0, 0.0, 0.0, 0.0};
    const EpsilonBPrime e1 = compute_epsilon_bprime(sparse, 3, 1.0);
    CHECK(e1.B_prime == 4);
    CHECK(e1.epsilon == doctest::Approx(1.0 / std::sqrt(2.0)));

    std::vector<double> cubic(100);
    for (std::size_t b = 1; b <= 100; ++b) {
        cubic[b - 1] = std::pow(static_cast<double>(b), -3.0);
    }
    const EpsilonBPrime e2 = compute_epsilon_bprime(cubic, 2, 10.0);
    CHECK(e2.epsilon == doctest::Approx(0.008838834764831844).epsilon(1e-14));
    CHECK(e2.B_prime == 12);

    const std::vector<double> zero(8, 0.0);
    const EpsilonBPrime e3 = compute_epsilon_bprime(zero, 1, 1.0);
    CHECK(e3.epsilon == 0.0);
    CHECK(e3.B_prime == 8);

    CHECK_THROWS((void)compute_epsilon_bprime(cubic, 2, 0.5));
    CHECK_THROWS((void)compute_epsilon_bprime(cubic, 0, 2.0));
}

TEST_CASE("select_parameters") {
    const RecoveryParameters ex = select_parameters(3, 0.5, ExactSparse{3});
    CHECK(ex.B_prime == 4);
    CHECK(ex.C == 1.0);

    const RecoveryParameters alg = select_parameters(2, 0.1, Algebraic{3.0, 1.0});
    CHECK(alg.C == 60.0);
    CHECK(alg.B_prime == 27);

    const RecoveryParameters e5 = select_parameters(2, 0.5, Exponential{1.0, 1.0});
    CHECK(e5.C == 24.0);
    CHECK(e5.B_prime == 10);
    const RecoveryParameters e25 = select_parameters(2, 0.25, Exponential{1.0, 1.0});
    CHECK(e25.C == 48.0);
    CHECK(e25.B_prime == 11);

    CHECK_THROWS_AS((void)select_parameters(2, 0.0, Algebraic{3.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)select_parameters(2, 1.0, Algebraic{3.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)select_parameters(2, 0.5, Algebraic{1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("select_parameters returns the smallest B' meeting the tail condition") {
    // Direct scan over the model law.
    for (double delta : {0.05, 0.1, 0.3}) {
        const RecoveryParameters p = select_parameters(2, delta, Algebraic{3.0, 1.0});
        const auto tail = [](std::size_t from) {
            double s = 0.0;
            for (std::size_t b = 2'000'000; b-- > from;) {
                s += std::pow(static_cast<double>(b), -3.0);
            }
            return s;
        };
        CHECK(tail(p.B_prime) < *p.epsilon / 2.0);
        CHECK(tail(p.B_prime - 1) >= *p.epsilon / 2.0);
    }
    for (double delta : {0.1, 0.25, 0.5}) {
        const RecoveryParameters p = select_parameters(2, delta, Exponential{1.0, 1.0});
        const auto tail = [](std::size_t from) { return std::exp2(-static_cast<double>(from)) * 2.0; };
        CHECK(tail(p.B_prime) < *p.epsilon / 2.0);
        CHECK(tail(p.B_prime - 1) >= *p.epsilon / 2.0);
    }
}

TEST_CASE("sparse_approximate recovers an exact 2-sparse spectrum") {
    const auto spec = planted(1000, {{17, {1.25, -0.5}}, {912, {-1.0, 1.0}}}, Window::unsigned_window);
    const Recovery rec = sparse_approximate(spec, {2, 3, 1.0, std::nullopt});
    REQUIRE(rec.rep.terms.size() == 2);
    CHECK(rec.rep.terms[0].omega == 912);
    CHECK(rec.rep.terms[1].omega == 17);
    CHECK(std::abs(rec.rep.terms[0].coeff - cplx{-1.0, 1.0}) < 1e-9);
    CHECK(std::abs(rec.rep.terms[1].coeff - cplx{1.25, -0.5}) < 1e-9);
    CHECK(rec.report.sample_count == 1000);
    CHECK(rec.report.accepted_counts.count(17) == 1);
    CHECK_FALSE(rec.measurements.has_value());
}

TEST_CASE("sparse_approximate finds a single tone through function samples") {
    const std::uint64_t n = 1030300;
    const cplx amplitude{0.8, 0.6};
    FunctionSampler tone;
    tone.bandwidth = n;
    tone.f = [&](double x) { return amplitude * std::polar(1.0, std::fmod(104134.0 * x, 2.0 * std::numbers::pi)); };
    const Recovery rec = sparse_approximate(tone, {1, 2, 1.0, std::nullopt}, {4, 8, false});
    REQUIRE(rec.rep.terms.size() == 1);
    CHECK(rec.rep.terms[0].omega == 104134);
    CHECK(std::abs(rec.rep.terms[0].coeff - amplitude) < 1e-8);
    CHECK(rec.report.sample_count == rec.report.plan.total_measurements());
    CHECK(rec.report.convention == Window::signed_window);
}

TEST_CASE("sparse_approximate on degenerate input") {
    const ExplicitSpectrum zero{std::vector<cplx>(64)};
    const Recovery rec = sparse_approximate(zero, {2, 3, 1.0, std::nullopt});
    for (const Term& t : rec.rep.terms) {
        CHECK(t.coeff == cplx{});
    }
    CHECK_THROWS_AS((void)sparse_approximate(zero, {2, 64, 1.0, std::nullopt}), std::invalid_argument);
    CHECK_THROWS_AS((void)sparse_approximate(zero, {3, 2, 1.0, std::nullopt}), std::invalid_argument);
    CHECK_THROWS_AS((void)sparse_approximate(zero, {1, 2, 0.5, std::nullopt}), std::invalid_argument);
}
