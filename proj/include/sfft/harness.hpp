#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sfft {

struct BenchRequest {
    std::vector<std::uint64_t> sizes;
    std::uint64_t sparsity = 2; ///< B' for the plan; signals carry sparsity - 1 terms
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool plan_only = false; ///< one arithmetic row per N, nothing sampled
    bool include_timings = true;
};

/// Lengths up to this use the explicit-spectrum path; larger ones sample a
/// trigonometric polynomial so no length-N array is built.
inline constexpr std::uint64_t kBenchVectorLimit = std::uint64_t{1} << 20;

/// Parses "1000", "10^6" or "2^20".
[[nodiscard]] std::uint64_t parse_size(std::string_view text);
[[nodiscard]] std::vector<std::uint64_t> parse_size_list(std::string_view text);

/// CSV with header N,K,m,samples,samples_per_N,identify_ms,estimate_ms and one
/// row per (N, trial), or one per N when plan_only. Zero trials gives the
/// header alone. Timing cells are empty when disabled or not measured.
[[nodiscard]] std::string run_bench(const BenchRequest& request);

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    std::string detail; ///< first failure, empty on success
};

/// Randomized invariant checks over the number theory, the measurement
/// design, the aliasing identity, recovery and the oracle. Zero trials runs
/// nothing and passes every suite.
[[nodiscard]] std::vector<SuiteResult> run_invariant_suite(std::size_t trials, std::uint64_t seed,
                                                          unsigned threads = 1);

/// Walk-through of fusing residues mod 100, 101 and 103 into 104134.
[[nodiscard]] std::string demo_crt_transcript();

} // namespace sfft
