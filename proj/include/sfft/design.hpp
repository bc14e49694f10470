#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sfft {

/// Prime-grouped measurement design for signals of length N and separation
/// sparsity k.
///
/// Holds the small primes p_1..p_m (p_0 = 1 is implicit) and the K
/// consecutive primes q_1..q_K. Measurement (j, l) aliases the spectrum
/// modulo q_j * p_l. Indices in this API are 0-based for j and use l = 0 for
/// the implicit p_0 = 1.
class PrimePlan {
public:
    /// Validates every plan invariant; throws std::invalid_argument.
    PrimePlan(std::uint64_t n, std::uint64_t k, std::vector<std::uint64_t> p_primes,
              std::vector<std::uint64_t> q_primes);

    [[nodiscard]] std::uint64_t n() const noexcept { return n_; }
    [[nodiscard]] std::uint64_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t m() const noexcept { return p_primes_.size(); }
    [[nodiscard]] std::size_t K() const noexcept { return q_primes_.size(); }
    [[nodiscard]] const std::vector<std::uint64_t>& p_primes() const noexcept { return p_primes_; }
    [[nodiscard]] const std::vector<std::uint64_t>& q_primes() const noexcept { return q_primes_; }

    /// p_l with p_0 = 1.
    [[nodiscard]] std::uint64_t p(std::size_t l) const { return l == 0 ? 1 : p_primes_.at(l - 1); }
    [[nodiscard]] std::uint64_t q(std::size_t j) const { return q_primes_.at(j); }
    [[nodiscard]] std::uint64_t modulus(std::size_t j, std::size_t l) const { return q(j) * p(l); }

    /// Sum over j and l = 0..m of p_l * q_j.
    [[nodiscard]] std::uint64_t total_measurements() const noexcept { return total_; }

    /// Strict majority threshold: count * 3 > 2K.
    [[nodiscard]] bool exceeds_majority(std::size_t count) const noexcept { return 3 * count > 2 * K(); }

private:
    std::uint64_t n_;
    std::uint64_t k_;
    std::vector<std::uint64_t> p_primes_;
    std::vector<std::uint64_t> q_primes_;
    std::uint64_t total_ = 0;
};

/// Largest e with base^e <= value, by integer exponentiation.
[[nodiscard]] std::uint64_t floor_log(std::uint64_t base, std::uint64_t value);

/// Builds the plan with K = 3k*floor(log_k N) + 1, m the smallest count of
/// leading primes whose product reaches N/k, and q_1 the first prime
/// >= max(p_m, k). Rejects k < 2, k >= N and N < 4.
[[nodiscard]] PrimePlan plan_parameters(std::uint64_t n, std::uint64_t k);

/// Names the subset S_{l,j,h} = { n : n == h mod p_l q_j }.
struct SubsetAddress {
    std::size_t l = 0;
    std::size_t j = 0;
    std::uint64_t h = 0;
};

[[nodiscard]] bool subset_membership(const SubsetAddress& addr, const PrimePlan& plan, std::int64_t n);

struct IsolationReport {
    std::vector<std::size_t> counts; ///< parallel to the queried set
    bool majority_holds = true;      ///< every count > 2K/3
};

/// For each x in X, counts the q-primes that separate x from the rest of X.
/// X must hold at most plan.k() distinct integers.
[[nodiscard]] IsolationReport verify_k_majority(const PrimePlan& plan, std::span<const std::int64_t> xs);

/// All b in [0, p_l) with S_{l,j,h + b q_j} intersected with X equal to {x}.
[[nodiscard]] std::vector<std::uint64_t> isolating_lifts(const PrimePlan& plan, std::span<const std::int64_t> xs,
                                                         std::int64_t x, std::size_t j, std::size_t l,
                                                         std::uint64_t h);

} // namespace sfft
