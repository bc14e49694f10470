#include "sfft/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "parallel.hpp"
#include "sfft/number_theory.hpp"
#include "sfft/window.hpp"

namespace sfft {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<Candidate> identify_for_prime(const MeasurementSet& ms, const FrequencyWindow& window, std::size_t j,
                                          std::size_t take) {
    const PrimePlan& plan = ms.plan();
    const std::uint64_t q = plan.q(j);
    const auto coarse = ms.bins(j, 0);

    std::vector<double> mags(q);
    for (std::uint64_t h = 0; h < q; ++h) {
        mags[h] = std::abs(coarse[h]);
    }
    std::vector<std::uint64_t> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                      [&](std::uint64_t a, std::uint64_t b) { return mags[a] > mags[b] || (mags[a] == mags[b] && a < b); });

    std::vector<Candidate> out;
    out.reserve(take);
    for (std::size_t r = 0; r < take; ++r) {
        const std::uint64_t r0 = order[r];
        const cplx anchor = coarse[r0];

        std::uint64_t q_modulus = q;
        std::uint64_t q_residue = r0;
        ResidueSystem congruences;
        for (std::size_t l = 1; l <= plan.m(); ++l) {
            const std::uint64_t p = plan.p(l);
            const auto fine = ms.bins(j, l);
            std::uint64_t t_min = 0;
            double best = std::abs(anchor - fine[r0]);
            for (std::uint64_t t = 1; t < p; ++t) {
                const double d = std::abs(anchor - fine[r0 + t * q]);
                if (d < best) {
                    best = d;
                    t_min = t;
                }
            }
            const std::uint64_t lifted = r0 + t_min * q;
            if (p == q) {
                // The lift already pins the residue modulo q^2.
                q_modulus = q * q;
                q_residue = lifted;
            } else {
                congruences.push(lifted % p, p);
            }
        }
        congruences.push(q_residue, q_modulus);

        u128 modulus = 1;
        for (std::uint64_t mod : congruences.moduli()) {
            modulus *= mod;
        }
        if (const auto omega = window.representative(crt_combine(congruences), modulus)) {
            out.push_back({*omega, j, r + 1, anchor});
        }
    }
    return out;
}

// Smallest integer x >= 1 with bound(x) true, given bound is monotone and
// `guess` is near the answer.
template <class Pred>
std::size_t smallest_satisfying(std::size_t guess, Pred&& bound) {
    std::size_t x = std::max<std::size_t>(guess, 1);
    while (x > 1 && bound(x - 1)) {
        --x;
    }
    while (!bound(x)) {
        ++x;
    }
    return x;
}

} // namespace

std::vector<Candidate> identify(const MeasurementSet& ms, std::size_t B_prime, unsigned threads) {
    const PrimePlan& plan = ms.plan();
    if (plan.k() != B_prime) {
        throw std::invalid_argument("identify: plan was built for k=" + std::to_string(plan.k()) +
                                    ", not B'=" + std::to_string(B_prime));
    }
    const FrequencyWindow window(plan.n(), ms.convention());
    std::vector<std::vector<Candidate>> per_prime(plan.K());
    detail::parallel_for(plan.K(), threads, [&](std::size_t j) {
        const std::size_t take = std::min<std::uint64_t>(B_prime + 1, plan.q(j));
        per_prime[j] = identify_for_prime(ms, window, j, take);
    });
    std::vector<Candidate> all;
    for (auto& part : per_prime) {
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

std::map<std::int64_t, std::size_t> candidate_counts(std::span<const Candidate> candidates) {
    std::map<std::int64_t, std::size_t> counts;
    for (const Candidate& c : candidates) {
        ++counts[c.omega];
    }
    return counts;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median of an empty set");
    }
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return lower + (upper - lower) / 2.0;
}

SparseRepresentation estimate(std::span<const Candidate> candidates, const PrimePlan& plan, std::size_t B,
                              Window convention) {
    std::map<std::int64_t, std::vector<cplx>> groups;
    for (const Candidate& c : candidates) {
        groups[c.omega].push_back(c.anchor_value);
    }

    SparseRepresentation rep;
    rep.convention = convention;
    rep.B = B;
    for (const auto& [omega, anchors] : groups) {
        if (!plan.exceeds_majority(anchors.size())) {
            continue;
        }
        std::vector<double> re(anchors.size());
        std::vector<double> im(anchors.size());
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            re[i] = anchors[i].real();
            im[i] = anchors[i].imag();
        }
        rep.terms.push_back({omega, {median(std::move(re)), median(std::move(im))}});
    }
    std::stable_sort(rep.terms.begin(), rep.terms.end(),
                     [](const Term& a, const Term& b) { return std::abs(a.coeff) > std::abs(b.coeff); });
    if (rep.terms.size() > B) {
        rep.terms.resize(B);
    }
    return rep;
}

EpsilonBPrime compute_epsilon_bprime(std::span<const double> sorted_magnitudes, std::size_t B, double C) {
    if (B < 1 || B > sorted_magnitudes.size()) {
        throw std::invalid_argument("compute_epsilon_bprime: need 1 <= B <= N");
    }
    if (!(C >= 1.0)) {
        throw std::invalid_argument("compute_epsilon_bprime: C must be >= 1");
    }
    const std::size_t n = sorted_magnitudes.size();
    EpsilonBPrime out;
    out.epsilon = sorted_magnitudes[B - 1] / (std::sqrt(2.0) * C);
    out.B_prime = n;

    // suffix[i] = sum of magnitudes from 0-based index i onward.
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        suffix[i] = suffix[i + 1] + sorted_magnitudes[i];
    }
    for (std::size_t b = 1; b <= n; ++b) {
        if (suffix[b - 1] < out.epsilon / 2.0) {
            out.B_prime = b;
            break;
        }
    }
    return out;
}

RecoveryParameters select_parameters(std::size_t B, double delta, const CompressibilityModel& model) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("select_parameters: delta must lie in (0, 1)");
    }
    if (B < 1) {
        throw std::invalid_argument("select_parameters: B must be >= 1");
    }
    validate(model);

    RecoveryParameters params;
    params.B = B;
    const auto b = static_cast<double>(B);

    if (std::holds_alternative<ExactSparse>(model)) {
        params.B_prime = B + 1;
        params.C = 1.0;
        return params;
    }

    // Explicit partial sum, then an upper bound on what remains.
    constexpr std::size_t kExplicitTerms = 20000;

    if (const auto* alg = std::get_if<Algebraic>(&model)) {
        const double p = alg->p;
        const double c = alg->c;
        params.C = std::ceil(6.0 / delta);
        const double eps = c * std::pow(b, -p) / (std::sqrt(2.0) * params.C);
        params.epsilon = eps;

        const auto closed = [&](std::size_t x) {
            return c * std::pow(static_cast<double>(x), 1.0 - p) / (p - 1.0) < eps / 2.0;
        };
        const double root = std::pow(eps / 2.0 * (p - 1.0) / c, 1.0 / (1.0 - p));
        const std::size_t guess = smallest_satisfying(static_cast<std::size_t>(std::max(1.0, std::floor(root))), closed);

        const auto tail_ok = [&](std::size_t start) {
            double sum = 0.0;
            const std::size_t stop = start + kExplicitTerms;
            for (std::size_t k = stop; k-- > start;) {
                sum += c * std::pow(static_cast<double>(k), -p);
            }
            sum += c * std::pow(static_cast<double>(stop - 1), 1.0 - p) / (p - 1.0);
            return sum < eps / 2.0;
        };
        params.B_prime = guess;
        while (!tail_ok(params.B_prime)) {
            ++params.B_prime;
        }
        return params;
    }

    const auto& ex = std::get<Exponential>(model);
    const double alpha = ex.alpha;
    const double c = ex.c;
    params.C = std::ceil(6.0 * b / delta);
    const double eps = c * std::exp2(-alpha * b) / (std::sqrt(2.0) * params.C);
    params.epsilon = eps;

    const auto closed = [&](std::size_t x) {
        return c * std::exp2(-alpha * static_cast<double>(x)) / (alpha * std::numbers::ln2) < eps / 2.0;
    };
    const double root = -std::log2(eps / 2.0 * alpha * std::numbers::ln2 / c) / alpha;
    const std::size_t guess = smallest_satisfying(static_cast<std::size_t>(std::max(1.0, std::floor(root))), closed);

    const auto tail_ok = [&](std::size_t start) {
        // Geometric series: exact closed form of sum_{k >= start}.
        const double sum = c * std::exp2(-alpha * static_cast<double>(start)) / (1.0 - std::exp2(-alpha));
        return sum < eps / 2.0;
    };
    params.B_prime = guess;
    while (!tail_ok(params.B_prime)) {
        ++params.B_prime;
    }
    return params;
}

Recovery sparse_approximate(const SignalSource& source, const RecoveryParameters& params,
                            const ApproximateOptions& options) {
    if (params.B < 1 || params.B_prime < params.B || params.B_prime < 2) {
        throw std::invalid_argument("sparse_approximate: need 1 <= B <= B' and B' >= 2");
    }
    if (!(params.C >= 1.0)) {
        throw std::invalid_argument("sparse_approximate: C must be >= 1");
    }

    const std::uint64_t n = std::visit(
        [](const auto& s) -> std::uint64_t {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FunctionSampler>) {
                return s.bandwidth;
            } else {
                return s.values.size();
            }
        },
        source);
    if (params.B_prime >= n) {
        throw std::invalid_argument("sparse_approximate: B' = " + std::to_string(params.B_prime) +
                                    " must be below N = " + std::to_string(n));
    }

    PrimePlan plan = plan_parameters(n, params.B_prime);
    PhaseTimings timings;

    auto start = Clock::now();
    MeasurementSet ms = std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ExplicitSpectrum>) {
                return measure_vector(s, plan, options.threads);
            } else if constexpr (std::is_same_v<S, ExplicitTimeVector>) {
                return measure_from_grid(s, plan, options.kappa, options.threads);
            } else {
                return measure_function(s, plan, options.threads);
            }
        },
        source);
    timings.measure_ms = elapsed_ms(start);

    start = Clock::now();
    const std::vector<Candidate> candidates = identify(ms, params.B_prime, options.threads);
    timings.identify_ms = elapsed_ms(start);

    start = Clock::now();
    SparseRepresentation rep = estimate(candidates, plan, params.B, ms.convention());
    timings.estimate_ms = elapsed_ms(start);

    const auto counts = candidate_counts(candidates);
    RecoveryReport report{plan, ms.convention(), ms.sample_count(), candidates.size(), counts.size(), {}, timings};
    for (const auto& [omega, count] : counts) {
        if (plan.exceeds_majority(count)) {
            report.accepted_counts.emplace(omega, count);
        }
    }

    Recovery out{std::move(rep), std::move(report), std::nullopt};
    if (options.keep_measurements) {
        out.measurements.emplace(std::move(ms));
    }
    return out;
}

} // namespace sfft
