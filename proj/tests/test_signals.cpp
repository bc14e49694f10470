#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sfft/signals.hpp"

using namespace sfft;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (cplx& x : v) {
        x = {g(rng), g(rng)};
    }
    return v;
}

double energy(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& x : v) {
        s += std::norm(x);
    }
    return s;
}

} // namespace

TEST_CASE("generated spectra follow their class law") {
    const auto exact = gen_signal(16, ExactSparse{1}, 5);
    std::size_t nonzero = 0;
    for (const cplx& v : exact.values) {
        if (v != cplx{}) {
            ++nonzero;
            CHECK(std::abs(v) >= 1.0 - 1e-15);
            CHECK(std::abs(v) <= 2.0 + 1e-15);
        }
    }
    CHECK(nonzero == 1);
    CHECK(sorted_magnitudes(gen_signal(100, ExactSparse{7}, 9))[6] >= 1.0 - 1e-15);

    const auto alg = sorted_magnitudes(gen_signal(100, Algebraic{3.0, 1.0}, 5));
    const auto ex = sorted_magnitudes(gen_signal(100, Exponential{1.0, 1.0}, 5));
    for (std::size_t b = 1; b <= 100; ++b) {
        CHECK(alg[b - 1] == doctest::Approx(std::pow(static_cast<double>(b), -3.0)).epsilon(1e-14));
        CHECK(ex[b - 1] == doctest::Approx(std::exp2(-static_cast<double>(b))).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)gen_signal(4, ExactSparse{5}, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)gen_signal(3, ExactSparse{1}, 1), std::invalid_argument);
}

TEST_CASE("generation is deterministic in the seed") {
    const auto a = gen_signal(64, Algebraic{2.0, 1.0}, 42, Window::signed_window);
    const auto b = gen_signal(64, Algebraic{2.0, 1.0}, 42, Window::signed_window);
    const auto c = gen_signal(64, Algebraic{2.0, 1.0}, 43, Window::signed_window);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.convention == Window::signed_window);
}

TEST_CASE("oracle DFT basics") {
    const std::vector<cplx> delta = {1.0, 0.0, 0.0, 0.0};
    for (const cplx& v : oracle_dft(delta)) {
        CHECK(std::abs(v - cplx{0.5}) < 1e-15);
    }
    std::vector<cplx> shifted(9);
    shifted[0] = 3.0;
    for (const cplx& v : oracle_dft(shifted)) {
        CHECK(std::abs(v) == doctest::Approx(1.0));
    }

    std::mt19937_64 rng(31);
    for (std::size_t n : {1, 2, 17, 64, 250}) {
        const auto x = random_vector(n, rng);
        const auto f = oracle_dft(x);
        CHECK(energy(f) == doctest::Approx(energy(x)).epsilon(1e-10));
        const auto back = oracle_idft(f);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(back[i] - x[i]) <= 1e-9 * std::sqrt(energy(x)));
        }
    }
}

TEST_CASE("top terms and tail energy") {
    const auto spec = gen_signal(100, Algebraic{3.0, 1.0}, 8);
    const TopTerms top = oracle_top_b(spec, 2);
    CHECK(top.tail_energy == doctest::Approx(0.0017180619649441408).epsilon(1e-12));
    REQUIRE(top.rep.terms.size() == 2);
    CHECK(std::abs(top.rep.terms[0].coeff) == doctest::Approx(1.0));
    CHECK(std::abs(top.rep.terms[1].coeff) == doctest::Approx(0.125));
    CHECK(oracle_top_b(spec, 100).tail_energy == 0.0);

    const auto sparse = gen_signal(50, ExactSparse{3}, 8);
    CHECK(oracle_top_b(sparse, 3).tail_energy == 0.0);

    // Ties go to the smaller frequency.
    ExplicitSpectrum flat{std::vector<cplx>(6, cplx{1.0}), Window::signed_window};
    const TopTerms tied = oracle_top_b(flat, 2);
    CHECK(tied.rep.terms[0].omega == -2);
    CHECK(tied.rep.terms[1].omega == -1);
    CHECK(tied.tail_energy == doctest::Approx(4.0));
}

TEST_CASE("tail energy obeys the integral bound") {
    for (double p : {1.5, 2.0, 3.0}) {
        const auto spec = gen_signal(500, Algebraic{p, 1.0}, 3);
        for (std::size_t B : {1, 2, 5, 20}) {
            const double b = static_cast<double>(B);
            const double bound = std::pow(b, 1.0 - 2.0 * p) / (2.0 * p - 1.0) + std::pow(b, -2.0 * p);
            CHECK(oracle_top_b(spec, B).tail_energy <= bound);
        }
    }
}

TEST_CASE("error_l2") {
    const auto spec = gen_signal(40, Algebraic{2.0, 1.0}, 4);
    const TopTerms top = oracle_top_b(spec, 40);
    CHECK(error_l2(spec, top.rep) == doctest::Approx(0.0).epsilon(1e-30));

    SparseRepresentation empty;
    CHECK(error_l2(spec, empty) == doctest::Approx(energy(spec.values)));

    const TopTerms one = oracle_top_b(spec, 1);
    SparseRepresentation off = one.rep;
    off.terms[0].coeff += cplx{0.3, -0.4};
    CHECK(error_l2(spec, off) == doctest::Approx(one.tail_energy + 0.25));

    SparseRepresentation twice = one.rep;
    twice.terms.push_back(twice.terms[0]);
    CHECK_THROWS((void)error_l2(spec, twice));
    SparseRepresentation outside;
    outside.terms.push_back({40, 1.0});
    CHECK_THROWS((void)error_l2(spec, outside));
}

TEST_CASE("interpolation reproduces polynomials and grid values") {
    const std::size_t n = 64;
    const unsigned kappa = 3;
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<cplx> poly(2 * kappa);
    for (cplx& c : poly) {
        c = {coeff(rng), coeff(rng)};
    }
    const auto eval = [&](double u) {
        cplx acc{};
        for (std::size_t i = poly.size(); i-- > 0;) {
            acc = acc * u + poly[i];
        }
        return acc;
    };
    // Values are only polynomial away from the wrap, so probe mid-grid.
    std::vector<cplx> grid(n);
    for (std::size_t j = 0; j < n; ++j) {
        grid[j] = eval(static_cast<double>(j) / static_cast<double>(n));
    }
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t floor_index = 10 + rng() % 40;
        const double f = frac(rng);
        const cplx got = interpolate_at(grid, floor_index, f, kappa);
        CHECK(std::abs(got - eval((static_cast<double>(floor_index) + f) / static_cast<double>(n))) < 1e-9);
    }

    const ExplicitTimeVector tv{grid};
    for (std::size_t j = 0; j < n; ++j) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        CHECK(interpolate_sample(tv, t, kappa) == grid[j]);
    }
    CHECK_THROWS((void)interpolate_sample(ExplicitTimeVector{std::vector<cplx>(11)}, 0.1, 3));
}

TEST_CASE("interpolation error shrinks with kappa") {
    const std::size_t n = 256;
    std::vector<cplx> grid(n);
    for (std::size_t j = 0; j < n; ++j) {
        grid[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    }
    const ExplicitTimeVector tv{grid};
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> at(0.0, 2.0 * std::numbers::pi);
    std::vector<double> ts(200);
    for (double& t : ts) {
        t = at(rng);
    }
    const auto max_err = [&](unsigned kappa) {
        double e = 0.0;
        for (double t : ts) {
            e = std::max(e, std::abs(interpolate_sample(tv, t, kappa) - std::polar(1.0, t)));
        }
        return e;
    };
    const double e2 = max_err(2);
    const double e6 = max_err(6);
    CHECK(e6 < 1e-6 * e2);
    CHECK(max_err(4) < e2);
}

TEST_CASE("default kappa") {
    CHECK(default_kappa(1e-6, 3.0) == 13); // ceil((19.93 + 3) / 2) + 1
    CHECK(default_kappa(0.5, 1.0) == 2);
    CHECK_THROWS((void)default_kappa(0.0, 1.0));
}

TEST_CASE("time vector synthesis inverts the oracle") {
    const auto spec = gen_signal(48, Algebraic{2.0, 1.0}, 5, Window::signed_window);
    const ExplicitTimeVector tv = synthesize_time_vector(spec);
    const auto f = oracle_dft(tv.values);
    const double scale = 1.0 / std::sqrt(48.0);
    for (std::size_t i = 0; i < 48; ++i) {
        CHECK(std::abs(f[i] * scale - spec.values[i]) < 1e-12);
    }
    const FunctionSampler sampler = trig_polynomial(spec);
    for (std::size_t j = 0; j < 48; j += 5) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / 48.0;
        CHECK(std::abs(sampler.f(t) - tv.values[j]) < 1e-12);
    }
}

TEST_CASE("CSV round trip and malformed input") {
    SignalFile file{SignalDomain::spectrum, Window::signed_window, {{1.0, -2.0}, {1.0 / 3.0, 1e-300}, {0.0, 0.0}}};
    std::stringstream ss;
    write_signal_csv(ss, file);
    const SignalFile back = read_signal_csv(ss);
    CHECK(back.domain == SignalDomain::spectrum);
    CHECK(back.convention == Window::signed_window);
    CHECK(back.values == file.values);

    SignalFile time{SignalDomain::time, Window::unsigned_window, {{0.5, 0.25}}};
    std::stringstream ts;
    write_signal_csv(ts, time);
    CHECK(read_signal_csv(ts).domain == SignalDomain::time);

    for (const char* bad : {"", "frequency\n1,2\n", "time\n1,2,3\n", "time\n1,x\n", "time\n", "spectrum,diagonal\n1,1\n"}) {
        std::stringstream in(bad);
        CHECK_THROWS_AS((void)read_signal_csv(in), std::runtime_error);
    }
}
