#pragma once

#include "qfan/ambient.hpp"
#include "qfan/connection.hpp"
#include "qfan/io.hpp"
#include "qfan/qring.hpp"

#include <string>

namespace qfan {

struct RunConfig {
    std::string input;
    std::string command;
    int q_order = 4;
    int semigroup_bound = 4;
    std::string format = "json";  // "json" or "text"
    bool fixture_mode = false;    // also print the full report on success
};

struct VerifyOutcome {
    bool pass = false;
    std::string report_json;  // stage-by-stage report with stable key order
};

/* Full cross-verification pipeline; throws Error for input problems, returns
 * pass=false with a witness for mathematical failures. */
VerifyOutcome run_verify(const FanFile& ff, int q_order, int semigroup_bound);

/* One CLI command; returns the process exit code (0 pass, 1 verification
 * failure, 2 input error) and writes the report to out. */
int dispatch(const RunConfig& cfg, std::string& out);
int dispatch_parsed(const RunConfig& cfg, const FanFile& ff, std::string& out);

}  // namespace qfan
