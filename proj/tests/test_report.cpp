#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sfft/harness.hpp"
#include "sfft/report.hpp"
#include "sfft/serialize.hpp"

using namespace sfft;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("sfft_test_" + name);
}

} // namespace

TEST_CASE("plan JSON carries every field") {
    const Json j = to_json(plan_parameters(30, 2));
    CHECK(j["N"] == 30);
    CHECK(j["k"] == 2);
    CHECK(j["m"] == 3);
    CHECK(j["K"] == 25);
    CHECK(j["p_primes"] == Json::array({2, 3, 5}));
    CHECK(j["q_primes"].size() == 25);
    CHECK(j["total_measurements"] == 13849);
    std::vector<std::string> keys;
    for (const auto& [key, value] : j.items()) {
        keys.push_back(key);
    }
    CHECK(keys == std::vector<std::string>{"N", "k", "m", "p_primes", "K", "q_primes", "total_measurements"});
}

TEST_CASE("measurement JSON layout") {
    const PrimePlan plan = plan_parameters(30, 2);
    ExplicitSpectrum s{std::vector<cplx>(30)};
    s.values[4] = {1.0, -1.0};
    const Json j = to_json(measure_vector(s, plan));
    CHECK(j["bins"].size() == plan.K() * (plan.m() + 1));
    CHECK(j["bins"][0]["modulus"] == 5);
    CHECK(j["bins"][0]["values"][4] == Json::array({1.0, -1.0}));
    CHECK(j["sample_count"] == 30);
}

TEST_CASE("run_recovery on a generated exact signal") {
    RecoverRequest req;
    req.model = "exact:B=2";
    req.n = 1000;
    req.B = 2;
    req.include_timings = false;
    const Json doc = run_recovery(req);
    CHECK(doc["parameters"]["B_prime"] == 3);
    CHECK(doc["oracle_skipped"] == false);
    CHECK(doc["oracle"]["exact_recovery"] == true);
    CHECK(doc["oracle"]["bound_satisfied"] == true);
    CHECK_FALSE(doc["report"].contains("timings_ms"));
    // Byte-identical on repeat.
    CHECK(run_recovery(req).dump() == doc.dump());
}

TEST_CASE("run_recovery with delta uses the class parameters") {
    RecoverRequest req;
    req.model = "algebraic:p=3,c=1";
    req.n = 4096;
    req.B = 2;
    req.delta = 0.1;
    const Json doc = run_recovery(req);
    CHECK(doc["parameters"]["C"] == 60.0);
    CHECK(doc["parameters"]["B_prime"] == 27);
    CHECK(doc["oracle"]["delta_bound_satisfied"] == true);
    CHECK(doc["oracle"]["bound_satisfied"] == true);
}

TEST_CASE("run_recovery reads files in both domains") {
    // Low frequencies keep the grid interpolation well resolved.
    ExplicitSpectrum spectrum{std::vector<cplx>(1024), Window::signed_window};
    spectrum.values[spectrum.window().index_of(5)] = {1.0, 0.5};
    spectrum.values[spectrum.window().index_of(-9)] = {-0.25, 1.5};
    const auto spath = temp_file("spectrum.csv");
    {
        std::ofstream out(spath);
        write_signal_csv(out, {SignalDomain::spectrum, Window::signed_window, spectrum.values});
    }
    RecoverRequest req;
    req.input_path = spath.string();
    req.B = 2;
    req.B_prime = 3;
    req.mode = MeasurementMode::function;
    const Json fdoc = run_recovery(req);
    CHECK(fdoc["oracle"]["exact_recovery"] == true);
    CHECK(fdoc["report"]["sample_count"] == fdoc["report"]["plan"]["total_measurements"]);

    const auto tpath = temp_file("time.csv");
    {
        std::ofstream out(tpath);
        write_signal_csv(out, {SignalDomain::time, Window::signed_window, synthesize_time_vector(spectrum).values});
    }
    RecoverRequest treq;
    treq.input_path = tpath.string();
    treq.B = 2;
    treq.B_prime = 3;
    treq.measurements_out = temp_file("bins.json").string();
    const Json tdoc = run_recovery(treq);
    CHECK(tdoc["mode"] == "grid");
    CHECK(tdoc["oracle"]["support_match"] == true);
    CHECK(tdoc["oracle"]["max_coefficient_error"].get<double>() < 1e-6);
    CHECK(std::filesystem::file_size(*treq.measurements_out) > 0);

    treq.mode = MeasurementMode::vector;
    CHECK_THROWS_AS((void)run_recovery(treq), std::invalid_argument);
    for (const auto& p : {spath, tpath, std::filesystem::path(*treq.measurements_out)}) {
        std::filesystem::remove(p);
    }
}

TEST_CASE("run_recovery rejects inconsistent requests") {
    RecoverRequest none;
    none.B = 1;
    CHECK_THROWS_AS((void)run_recovery(none), std::invalid_argument);

    RecoverRequest missing;
    missing.input_path = temp_file("does_not_exist.csv").string();
    missing.B = 1;
    CHECK_THROWS_AS((void)run_recovery(missing), std::runtime_error);

    const auto bad = temp_file("malformed.csv");
    {
        std::ofstream out(bad);
        out << "spectrum,unsigned\n1.0;2.0\n";
    }
    RecoverRequest malformed;
    malformed.input_path = bad.string();
    malformed.B = 1;
    CHECK_THROWS_AS((void)run_recovery(malformed), std::runtime_error);
    std::filesystem::remove(bad);

    RecoverRequest delta_without_model;
    delta_without_model.model = "exact:B=1";
    delta_without_model.n = 64;
    delta_without_model.B = 1;
    delta_without_model.delta = 0.1;
    delta_without_model.B_prime = 3;
    CHECK_THROWS_AS((void)run_recovery(delta_without_model), std::invalid_argument);
}

TEST_CASE("oracle is skipped above the limit") {
    RecoverRequest req;
    req.model = "exact:B=1";
    req.n = 512;
    req.B = 1;
    req.oracle_limit = 256;
    const Json doc = run_recovery(req);
    CHECK(doc["oracle_skipped"] == true);
    CHECK_FALSE(doc.contains("oracle"));
}

TEST_CASE("size parsing") {
    CHECK(parse_size("1000") == 1000);
    CHECK(parse_size("10^6") == 1'000'000);
    CHECK(parse_size("2^20") == 1'048'576);
    CHECK(parse_size_list("10^6,10^9,10^12") == std::vector<std::uint64_t>{1'000'000, 1'000'000'000, 1'000'000'000'000});
    CHECK_THROWS((void)parse_size("ten"));
    CHECK_THROWS((void)parse_size("10^30"));
    CHECK_THROWS((void)parse_size_list("10,"));
}

TEST_CASE("bench output") {
    BenchRequest req;
    req.sizes = {1000};
    req.trials = 0;
    CHECK(run_bench(req) == "N,K,m,samples,samples_per_N,identify_ms,estimate_ms\n");

    req.sizes = {1'000'000, 1'000'000'000, 1'000'000'000'000};
    req.trials = 1;
    req.plan_only = true;
    const std::string csv = run_bench(req);
    CHECK(csv.find("1000000,115,") != std::string::npos);
    CHECK(csv.find(",2173973,") != std::string::npos);
    CHECK(csv.find(",12070890,") != std::string::npos);
    CHECK(csv.find(",34778502,") != std::string::npos);

    req.sparsity = 1;
    CHECK_THROWS((void)run_bench(req));

    BenchRequest timed;
    timed.sizes = {4096};
    timed.sparsity = 3;
    timed.trials = 2;
    timed.include_timings = false;
    const std::string rows = run_bench(timed);
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);
    CHECK(rows.find("4096,64,5,4096,1,,\n") != std::string::npos);
}

TEST_CASE("invariant suite and demo") {
    for (const SuiteResult& r : run_invariant_suite(5, 99)) {
        CAPTURE(r.name);
        CAPTURE(r.detail);
        CHECK(r.passed);
        CHECK(r.checks > 0);
    }
    for (const SuiteResult& r : run_invariant_suite(0, 99)) {
        CHECK(r.passed);
        CHECK(r.checks == 0);
    }
    const std::string demo = demo_crt_transcript();
    CHECK(demo.find("104134") != std::string::npos);
    CHECK(demo.find("100 + 101 + 103 = 304 samples") != std::string::npos);
}
