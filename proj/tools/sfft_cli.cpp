#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sfft/sfft.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvariant = 2;

// Prints and frees a library-owned string.
int emit(sfft_status status, char** out) {
    if (status != SFFT_OK) {
        std::cerr << "error: " << sfft_last_error() << '\n';
        return kExitError;
    }
    char* text = *out;
    std::cout << text;
    if (*text != '\0' && text[std::char_traits<char>::length(text) - 1] != '\n') {
        std::cout << '\n';
    }
    sfft_string_free(text);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic sparse Fourier recovery from prime-aliased measurements"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 1;
    bool no_timings = false;
    std::uint64_t seed = 1;
    app.add_option("--threads", threads, "Worker threads for measurement and identification")
        ->check(CLI::Range(1U, 1024U));
    app.add_flag("--no-timings", no_timings, "Omit wall-clock timings so output is byte-stable");
    app.add_option("--seed", seed, "Seed for generated signals and randomized checks");

    auto* plan = app.add_subcommand("plan", "Print the measurement plan for length N and sparsity k");
    std::uint64_t plan_n = 0;
    std::uint64_t plan_k = 0;
    plan->add_option("--n", plan_n, "Signal length N")->required();
    plan->add_option("--sparsity", plan_k, "Separation sparsity k (B')")->required();

    auto* recover = app.add_subcommand("recover", "Recover a B-term Fourier representation");
    std::string input;
    std::string gen;
    std::uint64_t rec_n = 0;
    std::size_t terms = 0;
    std::size_t bprime = 0;
    double c = 0.0;
    double delta = 0.0;
    std::string mode;
    std::string window = "unsigned";
    unsigned kappa = 8;
    std::string measurements_out;
    auto* input_opt = recover->add_option("--input", input, "CSV signal file (spectrum or time domain)");
    auto* gen_opt = recover->add_option("--gen", gen, "Generate a signal: exact:B=2, algebraic:p=3,c=1, ...");
    input_opt->excludes(gen_opt);
    recover->add_option("--n", rec_n, "Length of the generated signal")->needs(gen_opt);
    recover->add_option("--b", terms, "Number of output terms B")->required()->check(CLI::PositiveNumber);
    auto* bprime_opt = recover->add_option("--bprime", bprime, "Separation sparsity B'")->check(CLI::Range(2UL, SIZE_MAX));
    auto* c_opt = recover->add_option("--c", c, "Precision constant C >= 1")->check(CLI::Range(1.0, 1e300));
    auto* delta_opt = recover->add_option("--delta", delta, "Target relative tail factor in (0, 1)");
    delta_opt->excludes(bprime_opt)->excludes(c_opt)->needs(gen_opt);
    recover->add_option("--mode", mode, "Measurement path")->check(CLI::IsMember({"vector", "function", "grid"}));
    recover->add_option("--window", window, "Frequency window for vector mode")
        ->check(CLI::IsMember({"unsigned", "signed"}));
    recover->add_option("--kappa", kappa, "Interpolation half-width for the grid path")->check(CLI::Range(1U, 64U));
    recover->add_option("--measurements-out", measurements_out, "Write every measurement bin as JSON");

    auto* bench = app.add_subcommand("bench", "Sample counts and phase timings as CSV");
    std::string n_list;
    std::uint64_t bench_k = 2;
    std::size_t trials = 1;
    bool plan_only = false;
    bench->add_option("--n-list", n_list, "Comma-separated lengths, e.g. 10^6,10^9")->required();
    bench->add_option("--sparsity", bench_k, "Separation sparsity k >= 2");
    auto* trials_opt = bench->add_option("--trials", trials, "Recovery runs per length (default: plan arithmetic only)");
    bench->add_flag("--plan-only", plan_only, "Only evaluate the sample-count arithmetic");

    auto* demo = app.add_subcommand("demo-crt", "Recover one tone from three small DFTs");

    auto* verify = app.add_subcommand("verify", "Run the randomized invariant suite");
    std::size_t verify_trials = 100;
    verify->add_option("--trials", verify_trials, "Trials per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    char* text = nullptr;
    if (*plan) {
        sfft_plan* p = nullptr;
        if (sfft_plan_create(plan_n, plan_k, &p) != SFFT_OK) {
            std::cerr << "error: " << sfft_last_error() << '\n';
            return kExitError;
        }
        const sfft_status st = sfft_plan_to_json(p, &text);
        sfft_plan_destroy(p);
        return emit(st, &text);
    }
    if (*recover) {
        if (input.empty() == gen.empty()) {
            std::cerr << "error: give exactly one of --input and --gen\n";
            return kExitError;
        }
        sfft_recover_request req;
        sfft_recover_request_init(&req);
        req.input_path = input.empty() ? nullptr : input.c_str();
        req.model = gen.empty() ? nullptr : gen.c_str();
        req.n = rec_n;
        req.seed = seed;
        req.window = window == "signed" ? SFFT_WINDOW_SIGNED : SFFT_WINDOW_UNSIGNED;
        req.mode = mode.empty() ? -1 : mode == "vector" ? SFFT_MODE_VECTOR : mode == "function" ? SFFT_MODE_FUNCTION : SFFT_MODE_GRID;
        req.terms = terms;
        req.bprime = bprime;
        req.c = c;
        req.delta = delta;
        req.kappa = kappa;
        req.threads = threads;
        req.include_timings = no_timings ? 0 : 1;
        req.measurements_out = measurements_out.empty() ? nullptr : measurements_out.c_str();
        return emit(sfft_recover_report(&req, &text), &text);
    }
    if (*bench) {
        const bool arithmetic_only = plan_only || trials_opt->count() == 0;
        return emit(sfft_bench_csv(n_list.c_str(), bench_k, trials, seed, threads, arithmetic_only ? 1 : 0,
                                   no_timings ? 0 : 1, &text),
                    &text);
    }
    if (*demo) {
        return emit(sfft_demo_crt(&text), &text);
    }
    if (*verify) {
        if (verify_trials == 0) {
            std::cerr << "warning: --trials 0 runs no checks; every suite passes vacuously\n";
        }
        int passed = 0;
        const sfft_status st = sfft_verify(verify_trials, seed, threads, &text, &passed);
        const int code = emit(st, &text);
        if (code != kExitOk) {
            return code;
        }
        return passed ? kExitOk : kExitInvariant;
    }
    return kExitError;
}
