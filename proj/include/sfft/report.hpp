#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sfft/reconstruct.hpp"
#include "sfft/serialize.hpp"
#include "sfft/signals.hpp"

namespace sfft {

enum class MeasurementMode { vector, function, grid };

[[nodiscard]] MeasurementMode mode_from_string(std::string_view name);
[[nodiscard]] std::string_view to_string(MeasurementMode mode) noexcept;

/// Oracle comparisons are skipped above this length.
inline constexpr std::uint64_t kOracleLimit = std::uint64_t{1} << 20;

/// Everything one end-to-end recovery run needs. Exactly one of input_path
/// and model must be set.
struct RecoverRequest {
    std::optional<std::string> input_path;
    std::optional<std::string> model; ///< e.g. "exact:B=2"
    std::uint64_t n = 0;              ///< length for generated signals
    std::uint64_t seed = 1;
    Window window = Window::unsigned_window; ///< vector mode, generated signals
    std::optional<MeasurementMode> mode;     ///< defaults: grid for time input, vector otherwise
    std::size_t B = 0;
    std::optional<std::size_t> B_prime;
    std::optional<double> C;
    std::optional<double> delta;
    unsigned kappa = 8;
    unsigned threads = 1;
    bool include_timings = true;
    std::optional<std::string> measurements_out;
    bool keep_measurements = false; ///< implied by measurements_out
    std::uint64_t oracle_limit = kOracleLimit;
};

/// A finished run: the recovery itself plus what the JSON document needs.
struct RecoveryRun {
    Json source;
    MeasurementMode mode = MeasurementMode::vector;
    std::uint64_t n = 0;
    RecoveryParameters params;
    std::optional<double> delta;
    unsigned kappa = 8;
    Recovery recovery;
    Json oracle; ///< null when skipped
    std::string oracle_skipped_reason;
};

/// Runs one recovery on an in-memory signal. The source fields of `request`
/// (input_path, model, n, seed, window) are ignored; `model` names the class
/// of a generated signal and enables --delta and the exact-class default.
[[nodiscard]] RecoveryRun recover_signal(SignalFile signal, const std::optional<CompressibilityModel>& model,
                                         Json source, const RecoverRequest& request);

[[nodiscard]] Json recovery_document(const RecoveryRun& run, bool include_timings);

/// Resolves parameters, runs sparse_approximate and, when the length allows,
/// compares against the oracle. Parameter precedence: --delta (needs a
/// model), explicit B' with C (default 1), B+1 for exact models, otherwise
/// epsilon and B' from the true sorted magnitudes with C (default 1).
/// Throws std::invalid_argument for inconsistent requests.
[[nodiscard]] Json run_recovery(const RecoverRequest& request);

} // namespace sfft
