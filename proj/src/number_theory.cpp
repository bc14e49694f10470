#include "sfft/number_theory.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace sfft {

ResidueSystem::ResidueSystem(std::vector<std::uint64_t> residues, std::vector<std::uint64_t> moduli) {
    if (residues.size() != moduli.size()) {
        throw std::invalid_argument("residue system: residues and moduli differ in length");
    }
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        push(residues[i], moduli[i]);
    }
}

void ResidueSystem::push(std::uint64_t residue, std::uint64_t modulus) {
    if (modulus == 0) {
        throw std::invalid_argument("residue system: modulus must be >= 1");
    }
    if (residue >= modulus) {
        throw std::invalid_argument("residue system: residue " + std::to_string(residue) +
                                    " not reduced modulo " + std::to_string(modulus));
    }
    residues_.push_back(residue);
    moduli_.push_back(modulus);
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

// Plain sieve of Eratosthenes, used for the base primes of each segment.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) {
        return out;
    }
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) {
            continue;
        }
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) {
            composite[j] = true;
        }
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) {
        --r;
    }
    while (static_cast<u128>(r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

} // namespace

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        a = std::exchange(b, a % b);
    }
    return a;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m == 1) {
        return 0;
    }
    i128 old_r = a % m;
    i128 r = m;
    i128 old_s = 1;
    i128 s = 0;
    while (r != 0) {
        const i128 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1) {
        throw std::domain_error("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
    }
    i128 inv = old_s % static_cast<i128>(m);
    if (inv < 0) {
        inv += m;
    }
    return static_cast<std::uint64_t>(inv);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) {
            return false;
        }
    }
    return true;
}

namespace {
constexpr std::uint64_t kSieveCeiling = std::uint64_t{1} << 40;
} // namespace

std::vector<std::uint64_t> generate_primes(std::size_t count, std::uint64_t lower_bound) {
    if (count == 0) {
        throw std::invalid_argument("generate_primes: count must be >= 1");
    }
    lower_bound = std::max<std::uint64_t>(lower_bound, 2);

    std::vector<std::uint64_t> out;
    out.reserve(count);

    // Far out the base-prime sieve dominates; test candidates directly instead.
    if (lower_bound > kSieveCeiling) {
        for (std::uint64_t v = lower_bound; out.size() < count; ++v) {
            if (is_prime(v)) {
                out.push_back(v);
            }
            if (v == std::numeric_limits<std::uint64_t>::max() && out.size() < count) {
                throw std::overflow_error("generate_primes: search exceeded 64-bit range");
            }
        }
        return out;
    }

    // Segment length from the prime number theorem, doubled each round.
    const double log_hi = std::log(static_cast<double>(lower_bound) + static_cast<double>(count) + 16.0);
    auto span = static_cast<std::uint64_t>(static_cast<double>(count) * (log_hi + 2.0) * 1.5) + 64;

    std::uint64_t lo = lower_bound;
    while (out.size() < count) {
        if (lo > std::numeric_limits<std::uint64_t>::max() - span) {
            throw std::overflow_error("generate_primes: search exceeded 64-bit range");
        }
        const std::uint64_t hi = lo + span; // exclusive
        const std::vector<std::uint64_t> base = primes_up_to(isqrt(hi - 1));
        std::vector<bool> composite(span, false);
        for (std::uint64_t p : base) {
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t v = start; v < hi; v += p) {
                composite[v - lo] = true;
            }
        }
        for (std::uint64_t v = lo; v < hi && out.size() < count; ++v) {
            if (v >= 2 && !composite[v - lo]) {
                assert(is_prime(v));
                out.push_back(v);
            }
        }
        lo = hi;
        span *= 2;
    }
    return out;
}

u128 crt_combine(const ResidueSystem& system) {
    u128 x = 0;
    u128 product = 1;
    const auto& residues = system.residues();
    const auto& moduli = system.moduli();
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const std::uint64_t m = moduli[i];
        const std::uint64_t r = residues[i];
        const auto product_mod = static_cast<std::uint64_t>(product % m);
        if (gcd(product_mod, m) != 1 && m != 1) {
            throw std::domain_error("crt_combine: modulus " + std::to_string(m) +
                                    " shares a factor with the preceding moduli");
        }
        if (product > std::numeric_limits<u128>::max() / m) {
            throw std::overflow_error("crt_combine: modulus product exceeds 128 bits");
        }
        // x + product * t == r (mod m)
        const auto x_mod = static_cast<std::uint64_t>(x % m);
        const std::uint64_t diff = (r + m - x_mod) % m;
        const std::uint64_t t = mul_mod(diff, mod_inverse(product_mod, m), m);
        x += product * t;
        product *= m;
    }
    return x;
}

std::string to_string(u128 value) {
    if (value == 0) {
        return "0";
    }
    std::string digits;
    while (value > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

} // namespace sfft
