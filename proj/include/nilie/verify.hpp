#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nilie {

struct VerificationReport {
    std::string check;
    std::map<std::string, std::string> parameters;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    int jmax = 3;
    int grid = 48;
    double tol_scale = 1.0;
};

/// Suites: lie, geometry, lambda, wigner, bridge, reduction, all.  Each check
/// corresponds to one invariant of its module; checks run in parallel and the
/// report is sorted by check name (per-check RNG streams are derived from the
/// seed and the check name, so the result is order-independent).
std::vector<std::string> verify_suites();
bool is_verify_suite(const std::string& name);
std::vector<VerificationReport> run_suite(const std::string& suite, const VerifyOptions& opts);

/// JSON report: { seed, suite, all_pass, checks: [...] }.  runtime_ms is
/// emitted only when include_timings is set, keeping the default artifact
/// byte-stable across runs.
std::string report_to_json(const std::string& suite, const VerifyOptions& opts,
                           const std::vector<VerificationReport>& reports, bool include_timings);

bool all_pass(const std::vector<VerificationReport>& reports);

} // namespace nilie
