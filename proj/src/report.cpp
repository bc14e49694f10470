#include "sfft/report.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "sfft/reconstruct.hpp"
#include "sfft/signals.hpp"

namespace sfft {

namespace {

struct LoadedSignal {
    SignalSource source;
    std::optional<ExplicitSpectrum> truth; ///< Fourier coefficients in the recovery window
    std::uint64_t n = 0;
    std::optional<CompressibilityModel> model;
};

LoadedSignal prepare(SignalFile file, const std::optional<CompressibilityModel>& model, MeasurementMode mode,
                     std::uint64_t oracle_limit) {
    LoadedSignal out;
    out.n = file.values.size();
    out.model = model;
    if (file.domain == SignalDomain::time) {
        if (mode != MeasurementMode::grid) {
            throw std::invalid_argument("time-domain input requires --mode grid");
        }
        if (out.n <= oracle_limit) {
            std::vector<cplx> coeffs = oracle_dft(file.values);
            const double scale = 1.0 / std::sqrt(static_cast<double>(out.n));
            for (cplx& c : coeffs) {
                c *= scale;
            }
            out.truth = ExplicitSpectrum{std::move(coeffs), Window::signed_window};
        }
        out.source = ExplicitTimeVector{std::move(file.values)};
        return out;
    }
    // Storage index is omega mod N in both windows, so only the labels move.
    const Window window = mode == MeasurementMode::vector ? file.convention : Window::signed_window;
    out.truth = ExplicitSpectrum{std::move(file.values), window};

    switch (mode) {
    case MeasurementMode::vector:
        out.source = *out.truth;
        break;
    case MeasurementMode::function:
        out.source = trig_polynomial(*out.truth);
        break;
    case MeasurementMode::grid:
        out.source = synthesize_time_vector(*out.truth);
        break;
    }
    return out;
}

RecoveryParameters resolve_parameters(const RecoverRequest& req, const LoadedSignal& sig) {
    if (req.B < 1) {
        throw std::invalid_argument("--b must be >= 1");
    }
    if (req.delta) {
        if (req.B_prime || req.C) {
            throw std::invalid_argument("--delta cannot be combined with --bprime or --c");
        }
        if (!sig.model) {
            throw std::invalid_argument("--delta needs a generated signal (--gen) to know its class");
        }
        return select_parameters(req.B, *req.delta, *sig.model);
    }
    if (req.B_prime) {
        return {req.B, *req.B_prime, req.C.value_or(1.0), std::nullopt};
    }
    if (sig.model && std::holds_alternative<ExactSparse>(*sig.model) && !req.C) {
        return {req.B, req.B + 1, 1.0, std::nullopt};
    }
    if (!sig.truth) {
        throw std::invalid_argument("cannot derive B' without the oracle spectrum; pass --bprime");
    }
    const double C = req.C.value_or(1.0);
    const EpsilonBPrime eb = compute_epsilon_bprime(sorted_magnitudes(*sig.truth), req.B, C);
    if (eb.B_prime >= sig.n) {
        throw std::invalid_argument("derived B' reaches N; pass --bprime explicitly");
    }
    return {req.B, std::max<std::size_t>(eb.B_prime, std::max<std::size_t>(req.B, 2)), C, eb.epsilon};
}

Json oracle_comparison(const ExplicitSpectrum& truth, const SparseRepresentation& rep,
                       const RecoveryParameters& params, std::optional<double> delta) {
    const double err = error_l2(truth, rep);
    const TopTerms top = oracle_top_b(truth, params.B);
    const double opt = top.tail_energy;
    const std::vector<double> mags = sorted_magnitudes(truth);
    const double a_b = mags[params.B - 1];
    const double epsilon = a_b / (std::sqrt(2.0) * params.C);

    const FrequencyWindow window = truth.window();
    double max_coeff_err = 0.0;
    for (const Term& t : rep.terms) {
        max_coeff_err = std::max(max_coeff_err, std::abs(t.coeff - truth.values[window.index_of(t.omega)]));
    }
    std::set<std::int64_t> got;
    std::set<std::int64_t> want;
    for (const Term& t : rep.terms) {
        got.insert(t.omega);
    }
    for (const Term& t : top.rep.terms) {
        want.insert(t.omega);
    }
    const bool support_match = got == want;

    Json out;
    out["error_l2_squared"] = err;
    out["optimal_error_l2_squared"] = opt;
    out["epsilon"] = epsilon;
    out["max_coefficient_error"] = max_coeff_err;
    out["coefficients_within_epsilon"] = max_coeff_err <= epsilon;
    out["support_match"] = support_match;
    out["exact_recovery"] = support_match && opt == 0.0 && max_coeff_err < 1e-9;

    const double t1 = opt + 6.0 * static_cast<double>(params.B) * a_b * a_b / params.C;
    bool satisfied = err <= t1;
    out["tail_bound_rhs"] = t1;
    out["tail_bound_satisfied"] = err <= t1;
    if (delta) {
        const double t2 = opt + *delta * opt;
        out["delta_bound_rhs"] = t2;
        out["delta_bound_satisfied"] = err <= t2;
        satisfied = satisfied && err <= t2;
    }
    out["bound_satisfied"] = satisfied;
    return out;
}

} // namespace

MeasurementMode mode_from_string(std::string_view name) {
    if (name == "vector") {
        return MeasurementMode::vector;
    }
    if (name == "function") {
        return MeasurementMode::function;
    }
    if (name == "grid") {
        return MeasurementMode::grid;
    }
    throw std::invalid_argument("unknown mode '" + std::string(name) + "' (vector, function or grid)");
}

std::string_view to_string(MeasurementMode mode) noexcept {
    switch (mode) {
    case MeasurementMode::vector:
        return "vector";
    case MeasurementMode::function:
        return "function";
    case MeasurementMode::grid:
        return "grid";
    }
    return "vector";
}

RecoveryRun recover_signal(SignalFile signal, const std::optional<CompressibilityModel>& model, Json source,
                           const RecoverRequest& req) {
    const MeasurementMode mode =
        req.mode.value_or(signal.domain == SignalDomain::time ? MeasurementMode::grid : MeasurementMode::vector);
    const LoadedSignal sig = prepare(std::move(signal), model, mode, req.oracle_limit);
    const RecoveryParameters params = resolve_parameters(req, sig);

    ApproximateOptions options;
    options.threads = req.threads;
    options.kappa = req.kappa;
    options.keep_measurements = req.keep_measurements || req.measurements_out.has_value();
    Recovery rec = sparse_approximate(sig.source, params, options);

    Json oracle;
    std::string skipped;
    if (sig.truth && sig.n <= req.oracle_limit) {
        oracle = oracle_comparison(*sig.truth, rec.rep, params, req.delta);
    } else {
        skipped = "N = " + std::to_string(sig.n) + " exceeds the oracle limit " + std::to_string(req.oracle_limit);
    }
    return RecoveryRun{std::move(source), mode,           sig.n,          params, req.delta, req.kappa,
                       std::move(rec),    std::move(oracle), std::move(skipped)};
}

Json recovery_document(const RecoveryRun& run, bool include_timings) {
    Json doc;
    doc["source"] = run.source;
    doc["mode"] = std::string(to_string(run.mode));
    doc["N"] = run.n;
    Json p = {{"B", run.params.B}, {"B_prime", run.params.B_prime}, {"C", run.params.C}};
    if (run.params.epsilon) {
        p["epsilon"] = *run.params.epsilon;
    }
    if (run.delta) {
        p["delta"] = *run.delta;
    }
    if (run.mode == MeasurementMode::grid) {
        p["kappa"] = run.kappa;
    }
    doc["parameters"] = std::move(p);
    doc["representation"] = to_json(run.recovery.rep);
    doc["report"] = to_json(run.recovery.report, include_timings);
    if (run.oracle.is_null()) {
        doc["oracle_skipped"] = true;
        doc["oracle_skipped_reason"] = run.oracle_skipped_reason;
    } else {
        doc["oracle_skipped"] = false;
        doc["oracle"] = run.oracle;
    }
    return doc;
}

Json run_recovery(const RecoverRequest& req) {
    if (req.input_path.has_value() == req.model.has_value()) {
        throw std::invalid_argument("give exactly one of --input and --gen");
    }

    SignalFile signal;
    std::optional<CompressibilityModel> model;
    Json source;
    if (req.model) {
        if (req.n < 4) {
            throw std::invalid_argument("--n must be >= 4 for generated signals");
        }
        model = parse_model(*req.model);
        const Window window = req.mode.value_or(MeasurementMode::vector) == MeasurementMode::vector
                                  ? req.window
                                  : Window::signed_window;
        ExplicitSpectrum spectrum = gen_signal(req.n, *model, req.seed, window);
        signal = SignalFile{SignalDomain::spectrum, window, std::move(spectrum.values)};
        source = {{"kind", "generated"}, {"model", describe(*model)}, {"seed", req.seed}};
    } else {
        std::ifstream in(*req.input_path);
        if (!in) {
            throw std::runtime_error("cannot open '" + *req.input_path + "'");
        }
        signal = read_signal_csv(in);
        source = {{"kind", "file"},
                  {"path", *req.input_path},
                  {"domain", signal.domain == SignalDomain::time ? "time" : "spectrum"}};
    }

    const RecoveryRun run = recover_signal(std::move(signal), model, std::move(source), req);
    if (req.measurements_out) {
        std::ofstream out(*req.measurements_out);
        if (!out) {
            throw std::runtime_error("cannot write '" + *req.measurements_out + "'");
        }
        out << to_json(*run.recovery.measurements).dump(1) << '\n';
    }
    return recovery_document(run, req.include_timings);
}

} // namespace sfft
