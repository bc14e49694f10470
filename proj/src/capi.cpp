#include "sfft/sfft.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sfft/design.hpp"
#include "sfft/harness.hpp"
#include "sfft/number_theory.hpp"
#include "sfft/report.hpp"
#include "sfft/serialize.hpp"
#include "sfft/signals.hpp"

struct sfft_plan {
    sfft::PrimePlan plan;
};

struct sfft_signal {
    sfft::SignalFile file;
    std::optional<sfft::CompressibilityModel> model;
    nlohmann::ordered_json source;
};

struct sfft_result {
    sfft::RecoveryRun run;
};

namespace {

thread_local std::string g_last_error;

sfft_status fail(sfft_status status, const char* message) {
    g_last_error = message;
    return status;
}

template <class F>
sfft_status guarded(F&& body) noexcept {
    try {
        body();
        g_last_error.clear();
        return SFFT_OK;
    } catch (const std::domain_error& e) {
        return fail(SFFT_DOMAIN, e.what());
    } catch (const std::overflow_error& e) {
        return fail(SFFT_OVERFLOW, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(SFFT_INTERNAL, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SFFT_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(SFFT_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        return fail(what.rfind("cannot", 0) == 0 ? SFFT_IO : SFFT_PARSE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SFFT_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SFFT_INTERNAL, e.what());
    } catch (...) {
        return fail(SFFT_INTERNAL, "unknown error");
    }
}

char* duplicate(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool ok, const char* what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

sfft::Window to_window(sfft_window w) {
    return w == SFFT_WINDOW_SIGNED ? sfft::Window::signed_window : sfft::Window::unsigned_window;
}

sfft::MeasurementMode to_mode(int mode) {
    switch (mode) {
    case SFFT_MODE_VECTOR:
        return sfft::MeasurementMode::vector;
    case SFFT_MODE_FUNCTION:
        return sfft::MeasurementMode::function;
    case SFFT_MODE_GRID:
        return sfft::MeasurementMode::grid;
    default:
        throw std::invalid_argument("unknown measurement mode");
    }
}

} // namespace

extern "C" {

const char* sfft_last_error(void) { return g_last_error.c_str(); }

void sfft_string_free(char* s) { delete[] s; }

sfft_status sfft_crt_combine(const uint64_t* residues, const uint64_t* moduli, size_t count, uint64_t* out) {
    return guarded([&] {
        require(out != nullptr && (count == 0 || (residues && moduli)), "null argument");
        require(count > 0, "empty congruence system");
        sfft::ResidueSystem sys;
        for (size_t i = 0; i < count; ++i) {
            sys.push(residues[i], moduli[i]);
        }
        const sfft::u128 x = sfft::crt_combine(sys);
        if (x > UINT64_MAX) {
            throw std::overflow_error("combined residue exceeds 64 bits");
        }
        *out = static_cast<uint64_t>(x);
    });
}

sfft_status sfft_plan_create(uint64_t n, uint64_t sparsity, sfft_plan** out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = new sfft_plan{sfft::plan_parameters(n, sparsity)};
    });
}

void sfft_plan_destroy(sfft_plan* plan) { delete plan; }

sfft_status sfft_plan_total_measurements(const sfft_plan* plan, uint64_t* out) {
    return guarded([&] {
        require(plan && out, "null argument");
        *out = plan->plan.total_measurements();
    });
}

sfft_status sfft_plan_to_json(const sfft_plan* plan, char** json) {
    return guarded([&] {
        require(plan && json, "null argument");
        *json = duplicate(sfft::to_json(plan->plan).dump(2));
    });
}

sfft_status sfft_model_parse(const char* text, char** canonical) {
    return guarded([&] {
        require(text && canonical, "null argument");
        *canonical = duplicate(sfft::describe(sfft::parse_model(text)));
    });
}

sfft_status sfft_signal_generate(uint64_t n, const char* model, uint64_t seed, sfft_window window,
                                 sfft_signal** out) {
    return guarded([&] {
        require(model && out, "null argument");
        const auto parsed = sfft::parse_model(model);
        auto spectrum = sfft::gen_signal(n, parsed, seed, to_window(window));
        auto* s = new sfft_signal{{sfft::SignalDomain::spectrum, spectrum.convention, std::move(spectrum.values)},
                                  parsed,
                                  {{"kind", "generated"}, {"model", sfft::describe(parsed)}, {"seed", seed}}};
        *out = s;
    });
}

sfft_status sfft_signal_from_arrays(const double* interleaved, uint64_t n, sfft_domain domain, sfft_window window,
                                    sfft_signal** out) {
    return guarded([&] {
        require(interleaved && out, "null argument");
        require(n > 0, "empty signal");
        std::vector<sfft::cplx> values(n);
        for (uint64_t i = 0; i < n; ++i) {
            values[i] = {interleaved[2 * i], interleaved[2 * i + 1]};
        }
        const bool time = domain == SFFT_DOMAIN_TIME;
        *out = new sfft_signal{
            {time ? sfft::SignalDomain::time : sfft::SignalDomain::spectrum, to_window(window), std::move(values)},
            std::nullopt,
            {{"kind", "memory"}, {"domain", time ? "time" : "spectrum"}}};
    });
}

sfft_status sfft_signal_read_csv(const char* path, sfft_signal** out) {
    return guarded([&] {
        require(path && out, "null argument");
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error(std::string("cannot open '") + path + "'");
        }
        auto file = sfft::read_signal_csv(in);
        const bool time = file.domain == sfft::SignalDomain::time;
        *out = new sfft_signal{std::move(file), std::nullopt,
                               {{"kind", "file"}, {"path", path}, {"domain", time ? "time" : "spectrum"}}};
    });
}

sfft_status sfft_signal_write_csv(const sfft_signal* signal, const char* path) {
    return guarded([&] {
        require(signal && path, "null argument");
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error(std::string("cannot write '") + path + "'");
        }
        sfft::write_signal_csv(out, signal->file);
        if (!out) {
            throw std::runtime_error(std::string("cannot write '") + path + "'");
        }
    });
}

sfft_status sfft_signal_length(const sfft_signal* signal, uint64_t* out) {
    return guarded([&] {
        require(signal && out, "null argument");
        *out = signal->file.values.size();
    });
}

void sfft_signal_destroy(sfft_signal* signal) { delete signal; }

void sfft_recover_options_init(sfft_recover_options* options) {
    if (options) {
        *options = sfft_recover_options{};
        options->mode = SFFT_MODE_VECTOR;
        options->kappa = 8;
        options->threads = 1;
    }
}

sfft_status sfft_recover(const sfft_signal* signal, const sfft_recover_options* options, sfft_result** out) {
    return guarded([&] {
        require(signal && options && out, "null argument");
        sfft::RecoverRequest req;
        req.B = options->terms;
        if (options->bprime != 0) {
            req.B_prime = options->bprime;
        }
        if (options->c != 0.0) {
            req.C = options->c;
        }
        if (options->delta != 0.0) {
            req.delta = options->delta;
        }
        req.mode = to_mode(options->mode);
        req.kappa = options->kappa == 0 ? 8 : options->kappa;
        req.threads = options->threads == 0 ? 1 : options->threads;
        req.keep_measurements = options->keep_measurements != 0;

        std::optional<sfft::CompressibilityModel> model = signal->model;
        if (options->model) {
            model = sfft::parse_model(options->model);
        }
        *out = new sfft_result{sfft::recover_signal(signal->file, model, signal->source, req)};
    });
}

sfft_status sfft_result_term_count(const sfft_result* result, size_t* out) {
    return guarded([&] {
        require(result && out, "null argument");
        *out = result->run.recovery.rep.terms.size();
    });
}

sfft_status sfft_result_term(const sfft_result* result, size_t index, int64_t* omega, double* re, double* im) {
    return guarded([&] {
        require(result && omega && re && im, "null argument");
        const auto& terms = result->run.recovery.rep.terms;
        require(index < terms.size(), "term index out of range");
        *omega = terms[index].omega;
        *re = terms[index].coeff.real();
        *im = terms[index].coeff.imag();
    });
}

sfft_status sfft_result_to_json(const sfft_result* result, int include_timings, char** json) {
    return guarded([&] {
        require(result && json, "null argument");
        *json = duplicate(sfft::recovery_document(result->run, include_timings != 0).dump(2));
    });
}

sfft_status sfft_result_measurements_json(const sfft_result* result, char** json) {
    return guarded([&] {
        require(result && json, "null argument");
        require(result->run.recovery.measurements.has_value(), "measurements were not kept");
        *json = duplicate(sfft::to_json(*result->run.recovery.measurements).dump(1));
    });
}

void sfft_result_destroy(sfft_result* result) { delete result; }

void sfft_recover_request_init(sfft_recover_request* request) {
    if (request) {
        *request = sfft_recover_request{};
        request->seed = 1;
        request->mode = -1;
        request->kappa = 8;
        request->threads = 1;
        request->include_timings = 1;
    }
}

sfft_status sfft_recover_report(const sfft_recover_request* request, char** json) {
    return guarded([&] {
        require(request && json, "null argument");
        sfft::RecoverRequest req;
        if (request->input_path) {
            req.input_path = request->input_path;
        }
        if (request->model) {
            req.model = request->model;
        }
        req.n = request->n;
        req.seed = request->seed;
        req.window = to_window(request->window);
        if (request->mode >= 0) {
            req.mode = to_mode(request->mode);
        }
        req.B = request->terms;
        if (request->bprime != 0) {
            req.B_prime = request->bprime;
        }
        if (request->c != 0.0) {
            req.C = request->c;
        }
        if (request->delta != 0.0) {
            req.delta = request->delta;
        }
        req.kappa = request->kappa == 0 ? 8 : request->kappa;
        req.threads = request->threads == 0 ? 1 : request->threads;
        req.include_timings = request->include_timings != 0;
        if (request->measurements_out) {
            req.measurements_out = request->measurements_out;
        }
        *json = duplicate(sfft::run_recovery(req).dump(2));
    });
}

sfft_status sfft_bench_csv(const char* size_list, uint64_t sparsity, size_t trials, uint64_t seed, unsigned threads,
                           int plan_only, int include_timings, char** csv) {
    return guarded([&] {
        require(size_list && csv, "null argument");
        sfft::BenchRequest req;
        req.sizes = sfft::parse_size_list(size_list);
        req.sparsity = sparsity;
        req.trials = trials;
        req.seed = seed;
        req.threads = threads == 0 ? 1 : threads;
        req.plan_only = plan_only != 0;
        req.include_timings = include_timings != 0;
        *csv = duplicate(sfft::run_bench(req));
    });
}

sfft_status sfft_verify(size_t trials, uint64_t seed, unsigned threads, char** summary, int* all_passed) {
    return guarded([&] {
        require(summary && all_passed, "null argument");
        const auto results = sfft::run_invariant_suite(trials, seed, threads == 0 ? 1 : threads);
        std::ostringstream os;
        bool ok = true;
        for (const auto& r : results) {
            os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)";
            if (!r.detail.empty()) {
                os << ": " << r.detail;
            }
            os << '\n';
            ok = ok && r.passed;
        }
        os << (ok ? "all suites passed" : "invariant suite FAILED") << '\n';
        *summary = duplicate(os.str());
        *all_passed = ok ? 1 : 0;
    });
}

sfft_status sfft_demo_crt(char** transcript) {
    return guarded([&] {
        require(transcript != nullptr, "null argument");
        *transcript = duplicate(sfft::demo_crt_transcript());
    });
}

} // extern "C"
