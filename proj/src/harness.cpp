#include "sfft/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sfft/design.hpp"
#include "sfft/dft.hpp"
#include "sfft/measurement.hpp"
#include "sfft/number_theory.hpp"
#include "sfft/reconstruct.hpp"
#include "sfft/signals.hpp"

namespace sfft {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    u128 value = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        value *= base;
        if (value > UINT64_MAX) {
            throw std::out_of_range("size overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(value);
}

std::uint64_t parse_u64(std::string_view text) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return std::stoull(std::string(text));
}

std::vector<Term> random_terms(std::uint64_t n, std::size_t count, std::mt19937_64& rng) {
    const FrequencyWindow window(n, Window::signed_window);
    std::uniform_int_distribution<std::int64_t> freq(window.lowest(), window.highest());
    std::uniform_real_distribution<double> mag(1.0, 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::set<std::int64_t> used;
    std::vector<Term> terms;
    while (terms.size() < count) {
        const std::int64_t omega = freq(rng);
        if (used.insert(omega).second) {
            terms.push_back({omega, std::polar(mag(rng), phase(rng))});
        }
    }
    return terms;
}

ExplicitSpectrum spectrum_from_terms(std::uint64_t n, const std::vector<Term>& terms) {
    ExplicitSpectrum s{std::vector<cplx>(n), Window::signed_window};
    const FrequencyWindow window = s.window();
    for (const Term& t : terms) {
        s.values[window.index_of(t.omega)] = t.coeff;
    }
    return s;
}

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (cplx& x : v) {
        x = {g(rng), g(rng)};
    }
    return v;
}

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

class Suite {
public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& what) {
        ++result_.checks;
        if (!ok && result_.passed) {
            result_.passed = false;
            result_.detail = what;
        }
    }

    SuiteResult run(std::size_t trials, const std::function<void(std::size_t)>& body) {
        try {
            for (std::size_t t = 0; t < trials && result_.passed; ++t) {
                body(t);
            }
        } catch (const std::exception& e) {
            result_.passed = false;
            result_.detail = std::string("exception: ") + e.what();
        }
        return result_;
    }

private:
    SuiteResult result_;
};

const std::vector<std::pair<std::uint64_t, std::uint64_t>>& small_plans() {
    static const std::vector<std::pair<std::uint64_t, std::uint64_t>> plans = {
        {30, 2}, {210, 2}, {512, 2}, {1000, 5}, {1000, 3}};
    return plans;
}

std::vector<std::int64_t> random_subset(std::uint64_t n, std::size_t size, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> pick(0, static_cast<std::int64_t>(n) - 1);
    std::set<std::int64_t> xs;
    while (xs.size() < size) {
        xs.insert(pick(rng));
    }
    return {xs.begin(), xs.end()};
}

} // namespace

std::uint64_t parse_size(std::string_view text) {
    const auto caret = text.find('^');
    if (caret == std::string_view::npos) {
        return parse_u64(text);
    }
    return checked_pow(parse_u64(text.substr(0, caret)), parse_u64(text.substr(caret + 1)));
}

std::vector<std::uint64_t> parse_size_list(std::string_view text) {
    std::vector<std::uint64_t> sizes;
    while (true) {
        const auto comma = text.find(',');
        sizes.push_back(parse_size(text.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return sizes;
}

std::string run_bench(const BenchRequest& req) {
    std::ostringstream os;
    os << "N,K,m,samples,samples_per_N,identify_ms,estimate_ms\n";
    if (req.sparsity < 2) {
        throw std::invalid_argument("bench: sparsity must be >= 2");
    }
    // Validate every size before producing rows.
    std::vector<PrimePlan> plans;
    for (std::uint64_t n : req.sizes) {
        plans.push_back(plan_parameters(n, req.sparsity));
    }
    if (req.trials == 0) {
        return os.str();
    }

    const auto row = [&](const PrimePlan& plan, std::uint64_t samples, const PhaseTimings* t) {
        os << plan.n() << ',' << plan.K() << ',' << plan.m() << ',' << samples << ','
           << std::setprecision(6) << static_cast<double>(samples) / static_cast<double>(plan.n()) << ',';
        if (t && req.include_timings) {
            os << std::fixed << std::setprecision(3) << t->identify_ms << ',' << t->estimate_ms
               << std::defaultfloat;
        } else {
            os << ',';
        }
        os << '\n';
    };

    for (const PrimePlan& plan : plans) {
        if (req.plan_only) {
            row(plan, plan.total_measurements(), nullptr);
            continue;
        }
        for (std::size_t trial = 0; trial < req.trials; ++trial) {
            std::mt19937_64 rng(req.seed * 0x9E3779B97F4A7C15ULL + plan.n() * 31 + trial);
            const std::size_t terms = req.sparsity - 1;
            const RecoveryParameters params{terms, req.sparsity, 1.0, std::nullopt};
            ApproximateOptions opts;
            opts.threads = req.threads;
            const std::vector<Term> planted = random_terms(plan.n(), terms, rng);
            const Recovery rec = plan.n() <= kBenchVectorLimit
                                     ? sparse_approximate(spectrum_from_terms(plan.n(), planted), params, opts)
                                     : sparse_approximate(trig_polynomial(planted, plan.n()), params, opts);
            row(plan, rec.report.sample_count, &rec.report.timings);
        }
    }
    return os.str();
}

std::vector<SuiteResult> run_invariant_suite(std::size_t trials, std::uint64_t seed, unsigned threads) {
    std::vector<SuiteResult> results;
    std::mt19937_64 rng(seed);

    {
        Suite s("crt_round_trip");
        results.push_back(s.run(trials, [&](std::size_t) {
            std::uniform_int_distribution<std::size_t> count(1, 5);
            std::uniform_int_distribution<std::uint64_t> low(2, 1'000'000);
            const auto moduli = generate_primes(count(rng), low(rng));
            u128 product = 1;
            for (std::uint64_t q : moduli) {
                product *= q;
            }
            std::uniform_int_distribution<std::uint64_t> hi(0, UINT64_MAX);
            const u128 x = ((static_cast<u128>(hi(rng)) << 64) | hi(rng)) % product;
            ResidueSystem sys;
            for (std::uint64_t q : moduli) {
                sys.push(static_cast<std::uint64_t>(x % q), q);
            }
            s.check(crt_combine(sys) == x, "CRT failed to reproduce " + to_string(x));
        }));
    }
    {
        Suite s("prime_generation");
        results.push_back(s.run(trials, [&](std::size_t) {
            std::uniform_int_distribution<std::uint64_t> low(0, 100'000);
            std::uniform_int_distribution<std::size_t> count(1, 20);
            const std::uint64_t lb = low(rng);
            const auto primes = generate_primes(count(rng), lb);
            const auto trial_division = [](std::uint64_t n) {
                if (n < 2) {
                    return false;
                }
                for (std::uint64_t d = 2; d * d <= n; ++d) {
                    if (n % d == 0) {
                        return false;
                    }
                }
                return true;
            };
            for (std::uint64_t v = lb; v <= primes.back(); ++v) {
                const bool listed = std::binary_search(primes.begin(), primes.end(), v);
                s.check(listed == trial_division(v), "prime list wrong at " + std::to_string(v));
            }
        }));
    }
    {
        Suite s("k_majority");
        results.push_back(s.run(trials, [&](std::size_t t) {
            const auto& [n, k] = small_plans()[t % small_plans().size()];
            const PrimePlan plan = plan_parameters(n, k);
            std::uniform_int_distribution<std::size_t> size(1, k);
            const auto xs = random_subset(n, size(rng), rng);
            s.check(verify_k_majority(plan, xs).majority_holds,
                    "majority failed for plan (" + std::to_string(n) + "," + std::to_string(k) + ")");
        }));
    }
    {
        Suite s("lift_uniqueness");
        results.push_back(s.run(trials, [&](std::size_t t) {
            const auto& [n, k] = small_plans()[t % small_plans().size()];
            const PrimePlan plan = plan_parameters(n, k);
            std::uniform_int_distribution<std::size_t> size(1, k);
            const auto xs = random_subset(n, size(rng), rng);
            std::uniform_int_distribution<std::size_t> pick_l(1, plan.m());
            for (std::int64_t x : xs) {
                for (std::size_t j = 0; j < plan.K(); ++j) {
                    const std::uint64_t q = plan.q(j);
                    const std::uint64_t h = mod_floor(x, q);
                    const bool isolated = std::none_of(xs.begin(), xs.end(), [&](std::int64_t y) {
                        return y != x && mod_floor(y, q) == h;
                    });
                    if (!isolated) {
                        continue;
                    }
                    const std::size_t l = pick_l(rng);
                    const auto lifts = isolating_lifts(plan, xs, x, j, l, h);
                    const std::uint64_t expect = (mod_floor(x, plan.modulus(j, l)) - h) / q;
                    s.check(lifts.size() == 1 && lifts[0] == expect,
                            "lift not unique for x=" + std::to_string(x) + " j=" + std::to_string(j));
                }
            }
        }));
    }
    {
        Suite s("telescoping");
        results.push_back(s.run(trials, [&](std::size_t t) {
            const auto& [n, k] = small_plans()[t % small_plans().size()];
            const PrimePlan plan = plan_parameters(n, k);
            const ExplicitSpectrum spec{random_vector(n, rng), Window::unsigned_window};
            const MeasurementSet ms = measure_vector(spec, plan, threads);
            std::uniform_int_distribution<std::size_t> pick_j(0, plan.K() - 1);
            const std::size_t j = pick_j(rng);
            const std::uint64_t q = plan.q(j);
            for (std::size_t l = 1; l <= plan.m(); ++l) {
                for (std::uint64_t h = 0; h < q; ++h) {
                    cplx sum{};
                    for (std::uint64_t b = 0; b < plan.p(l); ++b) {
                        sum += ms.bins(j, l)[h + b * q];
                    }
                    const cplx coarse = ms.bins(j, 0)[h];
                    s.check(std::abs(sum - coarse) <= 1e-9 * (1.0 + std::abs(coarse)), "fine bins do not sum");
                }
            }
        }));
    }
    {
        Suite s("aliasing");
        results.push_back(s.run(trials, [&](std::size_t) {
            std::uniform_int_distribution<std::uint64_t> size(16, 200);
            std::uniform_int_distribution<std::size_t> count(1, 4);
            const std::uint64_t n = size(rng);
            const PrimePlan plan = plan_parameters(n, 2);
            const auto terms = random_terms(n, count(rng), rng);
            const MeasurementSet direct = measure_vector(spectrum_from_terms(n, terms), plan, threads);
            const MeasurementSet sampled = measure_function(trig_polynomial(terms, n), plan, threads);
            for (std::size_t j = 0; j < plan.K(); ++j) {
                for (std::size_t l = 0; l <= plan.m(); ++l) {
                    const auto a = direct.bins(j, l);
                    const auto b = sampled.bins(j, l);
                    for (std::size_t h = 0; h < a.size(); ++h) {
                        s.check(std::abs(a[h] - b[h]) <= 1e-9 * (1.0 + std::abs(a[h])),
                                "sampled bin differs at N=" + std::to_string(n));
                    }
                }
            }
        }));
    }
    {
        Suite s("exact_recovery");
        results.push_back(s.run(trials, [&](std::size_t t) {
            static constexpr std::uint64_t sizes[] = {210, 1000, 4096};
            const std::uint64_t n = sizes[t % 3];
            std::uniform_int_distribution<std::size_t> pick_b(1, 3);
            const std::size_t B = pick_b(rng);
            const ExplicitSpectrum spec = gen_signal(n, ExactSparse{B}, rng(), Window::unsigned_window);
            ApproximateOptions opts;
            opts.threads = threads;
            const Recovery rec = sparse_approximate(spec, {B, B + 1, 1.0, std::nullopt}, opts);
            s.check(rec.rep.terms.size() == B, "wrong term count at N=" + std::to_string(n));
            for (const Term& term : rec.rep.terms) {
                s.check(std::abs(term.coeff - spec.values[static_cast<std::size_t>(term.omega)]) < 1e-9 &&
                            spec.values[static_cast<std::size_t>(term.omega)] != cplx{},
                        "bad term at omega=" + std::to_string(term.omega));
            }
        }));
    }
    {
        Suite s("median_robustness");
        results.push_back(s.run(trials, [&](std::size_t) {
            std::uniform_int_distribution<std::size_t> pick_k(4, 120);
            const std::size_t K = pick_k(rng);
            std::uniform_real_distribution<double> center(-10.0, 10.0);
            std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
            std::uniform_real_distribution<double> wild(-1e6, 1e6);
            const double c = center(rng);
            std::vector<double> clean(K);
            for (double& v : clean) {
                v = c + noise(rng);
            }
            std::vector<double> corrupted = clean;
            const std::size_t bad = K / 3 == 0 ? 0 : K / 3 - 1;
            std::vector<std::size_t> idx(K);
            std::iota(idx.begin(), idx.end(), 0);
            std::shuffle(idx.begin(), idx.end(), rng);
            for (std::size_t i = 0; i < bad; ++i) {
                corrupted[idx[i]] = wild(rng);
            }
            const auto [lo, hi] = std::minmax_element(clean.begin(), clean.end());
            const double spread = *hi - *lo;
            s.check(std::abs(median(corrupted) - median(clean)) <= spread, "median moved beyond the clean spread");
        }));
    }
    {
        Suite s("parseval");
        results.push_back(s.run(trials, [&](std::size_t) {
            std::uniform_int_distribution<std::size_t> size(1, 96);
            const auto x = random_vector(size(rng), rng);
            const auto spectrum = oracle_dft(x);
            const auto back = oracle_idft(spectrum);
            const double nx = norm2(x);
            s.check(std::abs(norm2(spectrum) - nx) <= 1e-9 * nx, "energy not preserved");
            double diff = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                diff = std::max(diff, std::abs(back[i] - x[i]));
            }
            s.check(diff <= 1e-9 * (1.0 + nx), "round trip failed");
        }));
    }
    {
        Suite s("translation");
        results.push_back(s.run(trials, [&](std::size_t) {
            std::uniform_int_distribution<std::size_t> size(8, 96);
            const std::size_t n = size(rng);
            const auto x = random_vector(n, rng);
            std::uniform_int_distribution<std::size_t> shift(0, n - 1);
            const std::size_t sh = shift(rng);
            std::vector<cplx> y(n);
            for (std::size_t j = 0; j < n; ++j) {
                y[(j + sh) % n] = x[j];
            }
            const auto fx = oracle_dft(x);
            const auto fy = oracle_dft(y);
            for (std::size_t w = 0; w < n; ++w) {
                const double angle = -2.0 * std::numbers::pi * static_cast<double>((w * sh) % n) / static_cast<double>(n);
                s.check(std::abs(fy[w] - std::polar(1.0, angle) * fx[w]) <= 1e-9 * (1.0 + norm2(x)),
                        "shift identity failed");
            }
            // Interpolation commutes with rotating the grid.
            if (n >= 16) {
                std::uniform_real_distribution<double> at(0.0, 2.0 * std::numbers::pi);
                const double t = at(rng);
                const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
                const double shifted = std::fmod(t + static_cast<double>(sh) * step, 2.0 * std::numbers::pi);
                const cplx a = interpolate_sample(ExplicitTimeVector{x}, t, 4);
                const cplx b = interpolate_sample(ExplicitTimeVector{y}, shifted, 4);
                s.check(std::abs(a - b) <= 1e-9 * (1.0 + norm2(x)), "interpolation not translation consistent");
            }
        }));
    }
    {
        Suite s("dft_vs_naive");
        results.push_back(s.run(trials, [&](std::size_t) {
            std::uniform_int_distribution<std::size_t> size(2, 700);
            const auto x = random_vector(size(rng), rng);
            const auto fast = dft_arbitrary_length(x);
            const auto naive = oracle_dft(x);
            const double scale = std::sqrt(static_cast<double>(x.size()));
            double l1 = 0.0;
            for (const cplx& v : x) {
                l1 += std::abs(v);
            }
            for (std::size_t i = 0; i < x.size(); ++i) {
                s.check(std::abs(fast[i] - naive[i] * scale) <= 1e-10 * l1,
                        "DFT mismatch at length " + std::to_string(x.size()));
            }
        }));
    }
    return results;
}

std::string demo_crt_transcript() {
    constexpr std::int64_t omega = 104134;
    constexpr std::uint64_t full = 1'000'000;
    const std::vector<std::uint64_t> sizes = {100, 101, 103};

    std::ostringstream os;
    os << "Signal: f(x) = exp(i * omega * x) with omega unknown in [0, " << full << ")\n";
    os << "Sampling f at n equispaced points folds omega onto bin omega mod n.\n";
    ResidueSystem sys;
    std::uint64_t samples = 0;
    for (std::uint64_t n : sizes) {
        std::vector<cplx> x(n);
        for (std::uint64_t k = 0; k < n; ++k) {
            const std::uint64_t phase = static_cast<std::uint64_t>(omega) % n * k % n;
            x[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(n));
        }
        const auto bins = dft_arbitrary_length(x);
        std::uint64_t peak = 0;
        for (std::uint64_t h = 1; h < n; ++h) {
            if (std::abs(bins[h]) > std::abs(bins[peak])) {
                peak = h;
            }
        }
        const std::uint64_t residue = peak;
        os << "  " << n << "-point DFT peaks at residue " << residue << ":  omega = " << residue << " (mod " << n
           << ")\n";
        sys.push(residue, n);
        samples += n;
    }
    os << "CRT over 100 * 101 * 103 = 1040300 >= " << full << ": omega = " << to_string(crt_combine(sys)) << '\n';
    os << "Samples: 100 + 101 + 103 = " << samples << " samples, versus 1,000,000 for a full-length DFT\n";
    return os.str();
}

} // namespace sfft
