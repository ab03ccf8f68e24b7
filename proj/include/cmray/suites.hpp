#pragma once

#include <json.hpp>

#include "cmray/theorems.hpp"

namespace cmray {

// Machine-readable verification suites shared by the CLI and the acceptance
// runner.  Each returns a report fragment: {results: [...], pass: bool}.
struct SuiteReport {
    nlohmann::json results = nlohmann::json::array();
    bool pass = true;
};

struct RunConfig {
    long dk = -20;
    long N = 5;
    long digits = 100;
    long guard = 20;
    long cutoff = 1000000;
    long max_n = 500;
    unsigned long seed = 1;
    int threads = 0;
    int samples = 20;

    PrecisionContext ctx() const { return PrecisionContext(digits, guard); }
};

nlohmann::json field_info_report(long dk);
nlohmann::json rayclass_report(long dk, long N, bool check);
nlohmann::json invariant_table_json(long dk, long N, const PrecisionContext& ctx);

SuiteReport suite_fricke_siegel(const RunConfig& cfg);
SuiteReport suite_kronecker(const RunConfig& cfg);
SuiteReport suite_decomposition(const RunConfig& cfg);
SuiteReport suite_case_constants(const RunConfig& cfg);
SuiteReport suite_table1(const RunConfig& cfg);
SuiteReport suite_main(const RunConfig& cfg);

std::string complex_str(const Complex& z, long digits);

}  // namespace cmray
