#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sfft {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

/// A tuple of remainders together with the moduli they were taken against.
///
/// Construction checks that both lists have the same length, that every
/// modulus is at least 1 and that every residue is reduced. Pairwise
/// coprimality is checked lazily by crt_combine.
class ResidueSystem {
public:
    ResidueSystem() = default;
    ResidueSystem(std::vector<std::uint64_t> residues, std::vector<std::uint64_t> moduli);

    void push(std::uint64_t residue, std::uint64_t modulus);

    [[nodiscard]] const std::vector<std::uint64_t>& residues() const noexcept { return residues_; }
    [[nodiscard]] const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }
    [[nodiscard]] std::size_t size() const noexcept { return moduli_.size(); }

private:
    std::vector<std::uint64_t> residues_;
    std::vector<std::uint64_t> moduli_;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
[[nodiscard]] bool is_prime(std::uint64_t n);

/// The first `count` primes that are >= lower_bound, ascending.
[[nodiscard]] std::vector<std::uint64_t> generate_primes(std::size_t count, std::uint64_t lower_bound);

/// Unique x in [0, prod(moduli)) matching every congruence.
///
/// Combines congruences pairwise with the extended Euclidean algorithm.
/// Throws std::domain_error for non-coprime moduli and std::overflow_error
/// when the modulus product does not fit in 128 bits.
[[nodiscard]] u128 crt_combine(const ResidueSystem& system);

/// Residue of a signed value in [0, modulus).
[[nodiscard]] constexpr std::uint64_t mod_floor(std::int64_t value, std::uint64_t modulus) noexcept {
    const i128 r = static_cast<i128>(value) % static_cast<i128>(modulus);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<i128>(modulus) : r);
}

[[nodiscard]] std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

/// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1.
[[nodiscard]] std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

[[nodiscard]] std::string to_string(u128 value);

} // namespace sfft
