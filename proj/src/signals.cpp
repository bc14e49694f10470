#include "sfft/signals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "sfft/number_theory.hpp"

namespace sfft {

namespace {

std::vector<std::uint64_t> distinct_indices(std::uint64_t n, std::size_t count, std::mt19937_64& rng) {
    std::vector<std::uint64_t> out;
    out.reserve(count);
    if (count * 4 < n) {
        std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
        std::unordered_set<std::uint64_t> seen;
        while (out.size() < count) {
            const std::uint64_t i = pick(rng);
            if (seen.insert(i).second) {
                out.push_back(i);
            }
        }
        return out;
    }
    std::vector<std::uint64_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(count);
    return all;
}

std::vector<cplx> root_table(std::uint64_t n, double sign) {
    std::vector<cplx> roots(n);
    for (std::uint64_t r = 0; r < n; ++r) {
        roots[r] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
    }
    return roots;
}

std::vector<cplx> unitary_dft(std::span<const cplx> in, double sign) {
    const std::uint64_t n = in.size();
    if (n == 0) {
        throw std::invalid_argument("oracle dft: empty input");
    }
    const auto roots = root_table(n, sign);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<cplx> out(n);
    for (std::uint64_t w = 0; w < n; ++w) {
        cplx acc{};
        std::uint64_t idx = 0;
        for (std::uint64_t j = 0; j < n; ++j) {
            acc += in[j] * roots[idx];
            idx += w;
            if (idx >= n) {
                idx -= n;
            }
        }
        out[w] = acc * scale;
    }
    return out;
}

// Barycentric weights for 2*kappa equispaced nodes: (-1)^i C(2kappa - 1, i).
std::vector<double> equispaced_weights(unsigned count) {
    std::vector<double> w(count);
    double binom = 1.0;
    for (unsigned i = 0; i < count; ++i) {
        w[i] = (i % 2 == 0) ? binom : -binom;
        binom = binom * static_cast<double>(count - 1 - i) / static_cast<double>(i + 1);
    }
    return w;
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double parse_double(const std::string& text, std::size_t line) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size()) {
        throw std::runtime_error("signal csv: line " + std::to_string(line) + ": bad number '" + t + "'");
    }
    return v;
}

} // namespace

ExplicitSpectrum gen_signal(std::uint64_t n, const CompressibilityModel& model, std::uint64_t seed,
                            Window convention) {
    validate(model);
    if (n < 4) {
        throw std::invalid_argument("gen_signal: N must be >= 4");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    ExplicitSpectrum spectrum{std::vector<cplx>(n), convention};

    if (const auto* exact = std::get_if<ExactSparse>(&model)) {
        if (exact->sparsity > n) {
            throw std::invalid_argument("gen_signal: sparsity exceeds N");
        }
        std::uniform_real_distribution<double> magnitude(1.0, 2.0);
        for (std::uint64_t idx : distinct_indices(n, exact->sparsity, rng)) {
            const double mag = magnitude(rng);
            spectrum.values[idx] = std::polar(mag, phase(rng));
        }
        return spectrum;
    }

    std::vector<std::uint64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint64_t rank = 1; rank <= n; ++rank) {
        const auto b = static_cast<double>(rank);
        double mag = 0.0;
        if (const auto* alg = std::get_if<Algebraic>(&model)) {
            mag = alg->c * std::pow(b, -alg->p);
        } else {
            const auto& ex = std::get<Exponential>(model);
            mag = ex.c * std::exp2(-ex.alpha * b);
        }
        spectrum.values[order[rank - 1]] = std::polar(mag, phase(rng));
    }
    return spectrum;
}

std::vector<cplx> oracle_dft(std::span<const cplx> time_vector) { return unitary_dft(time_vector, -1.0); }

std::vector<cplx> oracle_idft(std::span<const cplx> spectrum) { return unitary_dft(spectrum, 1.0); }

std::vector<double> sorted_magnitudes(const ExplicitSpectrum& spectrum) {
    std::vector<double> mags(spectrum.values.size());
    std::transform(spectrum.values.begin(), spectrum.values.end(), mags.begin(),
                   [](const cplx& v) { return std::abs(v); });
    std::sort(mags.begin(), mags.end(), std::greater<>());
    return mags;
}

TopTerms oracle_top_b(const ExplicitSpectrum& spectrum, std::size_t B) {
    if (B > spectrum.size()) {
        throw std::invalid_argument("oracle_top_b: B exceeds N");
    }
    const FrequencyWindow window = spectrum.window();
    std::vector<std::uint64_t> order(spectrum.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> mags(spectrum.size());
    for (std::uint64_t i = 0; i < spectrum.size(); ++i) {
        mags[i] = std::abs(spectrum.values[i]);
    }
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        if (mags[a] != mags[b]) {
            return mags[a] > mags[b];
        }
        return window.frequency_at(a) < window.frequency_at(b);
    });

    TopTerms top;
    top.rep.convention = spectrum.convention;
    top.rep.B = B;
    for (std::size_t r = 0; r < B; ++r) {
        top.rep.terms.push_back({window.frequency_at(order[r]), spectrum.values[order[r]]});
    }
    // Smallest first for a tighter floating-point sum.
    for (std::size_t r = order.size(); r-- > B;) {
        top.tail_energy += std::norm(spectrum.values[order[r]]);
    }
    return top;
}

double error_l2(const ExplicitSpectrum& spectrum, const SparseRepresentation& rep) {
    const FrequencyWindow window = spectrum.window();
    std::map<std::uint64_t, cplx> approx;
    for (const Term& t : rep.terms) {
        if (!approx.emplace(window.index_of(t.omega), t.coeff).second) {
            throw std::invalid_argument("error_l2: repeated frequency in representation");
        }
    }
    double err = 0.0;
    for (std::uint64_t i = 0; i < spectrum.size(); ++i) {
        const auto it = approx.find(i);
        err += std::norm(spectrum.values[i] - (it == approx.end() ? cplx{} : it->second));
    }
    return err;
}

cplx interpolate_at(std::span<const cplx> grid, std::uint64_t floor_index, double frac, unsigned kappa) {
    const std::uint64_t n = grid.size();
    if (kappa == 0 || n < 4ULL * kappa) {
        throw std::invalid_argument("interpolate: need kappa >= 1 and N >= 4 kappa");
    }
    floor_index %= n;
    if (frac == 0.0) {
        return grid[floor_index];
    }
    const unsigned count = 2 * kappa;
    const auto weights = equispaced_weights(count);
    double num_re = 0.0;
    double num_im = 0.0;
    double den = 0.0;
    for (unsigned i = 0; i < count; ++i) {
        // Node offsets -kappa+1 .. kappa around floor_index.
        const std::int64_t offset = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(kappa) + 1;
        const double dx = frac - static_cast<double>(offset);
        if (dx == 0.0) {
            return grid[mod_floor(static_cast<std::int64_t>(floor_index) + offset, n)];
        }
        const cplx value = grid[mod_floor(static_cast<std::int64_t>(floor_index) + offset, n)];
        const double c = weights[i] / dx;
        num_re += c * value.real();
        num_im += c * value.imag();
        den += c;
    }
    return {num_re / den, num_im / den};
}

cplx interpolate_sample(const ExplicitTimeVector& time_vector, double t, unsigned kappa) {
    const std::uint64_t n = time_vector.values.size();
    if (n == 0) {
        throw std::invalid_argument("interpolate_sample: empty time vector");
    }
    const auto grid_n = static_cast<long double>(n);
    long double u = static_cast<long double>(t) * grid_n / (2.0L * std::numbers::pi_v<long double>);
    u = std::fmod(u, grid_n);
    if (u < 0) {
        u += grid_n;
    }
    const long double nearest = std::round(u);
    if (std::fabs(u - nearest) <= 64.0L * std::numeric_limits<double>::epsilon() * std::max(1.0L, u)) {
        u = nearest;
    }
    const long double whole = std::floor(u);
    const auto floor_index = static_cast<std::uint64_t>(whole) % n;
    return interpolate_at(time_vector.values, floor_index, static_cast<double>(u - whole), kappa);
}

unsigned default_kappa(double delta, double p) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("default_kappa: delta must lie in (0, 1)");
    }
    return static_cast<unsigned>(std::ceil((std::log2(1.0 / delta) + std::max(p, 0.0)) / 2.0)) + 1;
}

ExplicitTimeVector synthesize_time_vector(const ExplicitSpectrum& coefficients) {
    const std::uint64_t n = coefficients.size();
    const FrequencyWindow window = coefficients.window();
    const auto roots = root_table(n, 1.0);
    ExplicitTimeVector tv{std::vector<cplx>(n)};
    for (std::uint64_t i = 0; i < n; ++i) {
        const cplx c = coefficients.values[i];
        if (c == cplx{}) {
            continue;
        }
        const std::uint64_t w = mod_floor(window.frequency_at(i), n);
        std::uint64_t idx = 0;
        for (std::uint64_t j = 0; j < n; ++j) {
            tv.values[j] += c * roots[idx];
            idx += w;
            if (idx >= n) {
                idx -= n;
            }
        }
    }
    return tv;
}

FunctionSampler trig_polynomial(std::vector<Term> terms, std::uint64_t bandwidth) {
    const FrequencyWindow window(bandwidth, Window::signed_window);
    for (const Term& t : terms) {
        if (!window.contains(t.omega)) {
            throw std::out_of_range("trig_polynomial: frequency " + std::to_string(t.omega) +
                                    " outside the signed window");
        }
    }
    FunctionSampler sampler;
    sampler.bandwidth = bandwidth;
    sampler.f = [terms = std::move(terms)](double x) {
        constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
        cplx acc{};
        for (const Term& t : terms) {
            const long double angle = std::fmod(static_cast<long double>(t.omega) * x, two_pi);
            acc += t.coeff * std::polar(1.0, static_cast<double>(angle));
        }
        return acc;
    };
    return sampler;
}

FunctionSampler trig_polynomial(const ExplicitSpectrum& coefficients) {
    const FrequencyWindow window(coefficients.size(), Window::signed_window);
    std::vector<Term> terms;
    for (std::uint64_t i = 0; i < coefficients.size(); ++i) {
        if (coefficients.values[i] != cplx{}) {
            terms.push_back({window.frequency_at(i), coefficients.values[i]});
        }
    }
    return trig_polynomial(std::move(terms), coefficients.size());
}

void write_signal_csv(std::ostream& os, const SignalFile& signal) {
    if (signal.domain == SignalDomain::spectrum) {
        os << "spectrum," << to_string(signal.convention) << '\n';
    } else {
        os << "time\n";
    }
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const cplx& v : signal.values) {
        os << v.real() << ',' << v.imag() << '\n';
    }
}

SignalFile read_signal_csv(std::istream& is) {
    SignalFile signal;
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("signal csv: missing header row");
    }
    line = trim(line);
    const auto comma = line.find(',');
    const std::string domain = trim(line.substr(0, comma));
    if (domain == "spectrum") {
        signal.domain = SignalDomain::spectrum;
        if (comma != std::string::npos) {
            try {
                signal.convention = window_from_string(trim(line.substr(comma + 1)));
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error(std::string("signal csv: ") + e.what());
            }
        }
    } else if (domain == "time") {
        signal.domain = SignalDomain::time;
        signal.convention = Window::signed_window;
    } else {
        throw std::runtime_error("signal csv: header must name the domain (spectrum or time)");
    }

    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto sep = line.find(',');
        if (sep == std::string::npos || line.find(',', sep + 1) != std::string::npos) {
            throw std::runtime_error("signal csv: line " + std::to_string(line_no) + ": expected 're,im'");
        }
        signal.values.emplace_back(parse_double(line.substr(0, sep), line_no),
                                   parse_double(line.substr(sep + 1), line_no));
    }
    if (signal.values.empty()) {
        throw std::runtime_error("signal csv: no samples");
    }
    return signal;
}

} // namespace sfft
