#include "sfft/design.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "sfft/number_theory.hpp"

namespace sfft {

PrimePlan::PrimePlan(std::uint64_t n, std::uint64_t k, std::vector<std::uint64_t> p_primes,
                     std::vector<std::uint64_t> q_primes)
    : n_(n), k_(k), p_primes_(std::move(p_primes)), q_primes_(std::move(q_primes)) {
    if (k_ < 2 || n_ <= k_) {
        throw std::invalid_argument("prime plan: need 2 <= k < N");
    }
    if (p_primes_.empty() || q_primes_.empty()) {
        throw std::invalid_argument("prime plan: empty prime list");
    }
    // prod_{l<m} p_l <= N/k <= prod_{l<=m} p_l, in integers: prod*k vs N.
    u128 prefix = 1;
    for (std::size_t l = 0; l + 1 < p_primes_.size(); ++l) {
        prefix *= p_primes_[l];
    }
    const u128 full = prefix * p_primes_.back();
    if (p_primes_.size() > 1 && prefix * k_ > n_) {
        throw std::invalid_argument("prime plan: too many p-primes for N/k");
    }
    if (full * k_ < n_) {
        throw std::invalid_argument("prime plan: p-prime product below N/k");
    }
    if (q_primes_.front() < std::max(p_primes_.back(), k_)) {
        throw std::invalid_argument("prime plan: q_1 below max(p_m, k)");
    }
    if (static_cast<u128>(q_primes_.front()) * full < n_) {
        throw std::invalid_argument("prime plan: q_1 * prod p_l below N");
    }
    if (!std::is_sorted(q_primes_.begin(), q_primes_.end()) ||
        std::adjacent_find(q_primes_.begin(), q_primes_.end()) != q_primes_.end()) {
        throw std::invalid_argument("prime plan: q-primes must be strictly ascending");
    }

    std::uint64_t p_sum = 1; // p_0
    for (std::uint64_t p : p_primes_) {
        p_sum += p;
    }
    u128 total = 0;
    for (std::uint64_t q : q_primes_) {
        total += static_cast<u128>(q) * p_sum;
    }
    if (total > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("prime plan: measurement count exceeds 64 bits");
    }
    total_ = static_cast<std::uint64_t>(total);
}

std::uint64_t floor_log(std::uint64_t base, std::uint64_t value) {
    if (base < 2 || value < 1) {
        throw std::invalid_argument("floor_log: need base >= 2 and value >= 1");
    }
    std::uint64_t e = 0;
    u128 power = 1;
    while (power * base <= value) {
        power *= base;
        ++e;
    }
    return e;
}

PrimePlan plan_parameters(std::uint64_t n, std::uint64_t k) {
    if (n < 4) {
        throw std::invalid_argument("plan_parameters: N must be >= 4");
    }
    if (k < 2 || k >= n) {
        throw std::invalid_argument("plan_parameters: need 2 <= k < N (got k=" + std::to_string(k) +
                                    ", N=" + std::to_string(n) + ")");
    }
    const std::uint64_t big_k = 3 * k * floor_log(k, n) + 1;

    std::vector<std::uint64_t> p_primes;
    u128 product = 1;
    std::uint64_t next = 2;
    do {
        const std::uint64_t p = generate_primes(1, next).front();
        p_primes.push_back(p);
        product *= p;
        next = p + 1;
    } while (product * k < n);

    auto q_primes = generate_primes(big_k, std::max(p_primes.back(), k));
    return PrimePlan(n, k, std::move(p_primes), std::move(q_primes));
}

bool subset_membership(const SubsetAddress& addr, const PrimePlan& plan, std::int64_t n) {
    return mod_floor(n, plan.modulus(addr.j, addr.l)) == addr.h;
}

IsolationReport verify_k_majority(const PrimePlan& plan, std::span<const std::int64_t> xs) {
    if (xs.size() > plan.k()) {
        throw std::invalid_argument("verify_k_majority: set larger than k");
    }
    IsolationReport report;
    report.counts.assign(xs.size(), 0);
    for (std::size_t j = 0; j < plan.K(); ++j) {
        const std::uint64_t q = plan.q(j);
        for (std::size_t a = 0; a < xs.size(); ++a) {
            const std::uint64_t ra = mod_floor(xs[a], q);
            bool isolated = true;
            for (std::size_t b = 0; b < xs.size() && isolated; ++b) {
                isolated = (a == b) || mod_floor(xs[b], q) != ra;
            }
            report.counts[a] += isolated ? 1 : 0;
        }
    }
    report.majority_holds = std::all_of(report.counts.begin(), report.counts.end(),
                                        [&](std::size_t c) { return plan.exceeds_majority(c); });
    return report;
}

std::vector<std::uint64_t> isolating_lifts(const PrimePlan& plan, std::span<const std::int64_t> xs,
                                           std::int64_t x, std::size_t j, std::size_t l, std::uint64_t h) {
    std::vector<std::uint64_t> lifts;
    const std::uint64_t q = plan.q(j);
    for (std::uint64_t b = 0; b < plan.p(l); ++b) {
        const SubsetAddress addr{l, j, h + b * q};
        std::size_t members = 0;
        bool has_x = false;
        for (std::int64_t y : xs) {
            if (subset_membership(addr, plan, y)) {
                ++members;
                has_x = has_x || y == x;
            }
        }
        if (members == 1 && has_x) {
            lifts.push_back(b);
        }
    }
    return lifts;
}

} // namespace sfft
