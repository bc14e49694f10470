#pragma once

#include <json.hpp>

#include "sfft/design.hpp"
#include "sfft/measurement.hpp"
#include "sfft/reconstruct.hpp"
#include "sfft/types.hpp"

namespace sfft {

using Json = nlohmann::ordered_json;

/// {N, k, m, p_primes, K, q_primes, total_measurements}
[[nodiscard]] Json to_json(const PrimePlan& plan);

/// {convention, sample_count, bins: [{j, l, modulus, values: [[re, im], ...]}]}
/// with j and l as stored (0-based j, l = 0 for the coarse level).
[[nodiscard]] Json to_json(const MeasurementSet& ms);

/// {convention, B, terms: [{omega, coeff: [re, im]}]}
[[nodiscard]] Json to_json(const SparseRepresentation& rep);

/// Run summary; timings are omitted when include_timings is false so the
/// output is byte-stable across runs.
[[nodiscard]] Json to_json(const RecoveryReport& report, bool include_timings = true);

[[nodiscard]] Json complex_pair(cplx value);

} // namespace sfft
