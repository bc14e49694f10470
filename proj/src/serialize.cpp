#include "sfft/serialize.hpp"

#include <string>

#include "sfft/window.hpp"

namespace sfft {

Json complex_pair(cplx value) { return Json::array({value.real(), value.imag()}); }

Json to_json(const PrimePlan& plan) {
    Json out;
    out["N"] = plan.n();
    out["k"] = plan.k();
    out["m"] = plan.m();
    out["p_primes"] = plan.p_primes();
    out["K"] = plan.K();
    out["q_primes"] = plan.q_primes();
    out["total_measurements"] = plan.total_measurements();
    return out;
}

Json to_json(const MeasurementSet& ms) {
    const PrimePlan& plan = ms.plan();
    Json out;
    out["convention"] = std::string(to_string(ms.convention()));
    out["sample_count"] = ms.sample_count();
    Json bins = Json::array();
    for (std::size_t j = 0; j < plan.K(); ++j) {
        for (std::size_t l = 0; l <= plan.m(); ++l) {
            Json values = Json::array();
            for (const cplx& v : ms.bins(j, l)) {
                values.push_back(complex_pair(v));
            }
            bins.push_back({{"j", j}, {"l", l}, {"modulus", plan.modulus(j, l)}, {"values", std::move(values)}});
        }
    }
    out["bins"] = std::move(bins);
    return out;
}

Json to_json(const SparseRepresentation& rep) {
    Json out;
    out["convention"] = std::string(to_string(rep.convention));
    out["B"] = rep.B;
    Json terms = Json::array();
    for (const Term& t : rep.terms) {
        terms.push_back({{"omega", t.omega}, {"coeff", complex_pair(t.coeff)}});
    }
    out["terms"] = std::move(terms);
    return out;
}

Json to_json(const RecoveryReport& report, bool include_timings) {
    Json out;
    out["plan"] = to_json(report.plan);
    out["convention"] = std::string(to_string(report.convention));
    out["sample_count"] = report.sample_count;
    out["total_candidates"] = report.total_candidates;
    out["distinct_candidates"] = report.distinct_candidates;
    Json accepted = Json::array();
    for (const auto& [omega, count] : report.accepted_counts) {
        accepted.push_back({{"omega", omega}, {"count", count}});
    }
    out["accepted"] = std::move(accepted);
    if (include_timings) {
        out["timings_ms"] = {{"measure", report.timings.measure_ms},
                             {"identify", report.timings.identify_ms},
                             {"estimate", report.timings.estimate_ms}};
    }
    return out;
}

} // namespace sfft
