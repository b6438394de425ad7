#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmvp {

/// One numeric comparison: passed iff value <= tolerance. Informational
/// checks are reported but never fail a suite.
struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool informational = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    bool nonconvergence = false;  // a quadrature or eigen iteration gave up
    bool passed() const;
};

/// Parameter overrides; unset fields fall back to each suite's default grid.
/// tol, when set, replaces every nonzero pinned tolerance.
struct SuiteParams {
    std::optional<double> xi, eta, lambda;
    std::optional<double> alpha, beta, c;
    std::optional<double> tol;
    std::optional<long> dim;
    std::uint64_t seed = 20260415;
};

const std::vector<std::string>& suite_names();  // excludes "all"

/// Runs one named suite, or every suite for "all". Numerical failures inside
/// a suite are caught and recorded as failed checks.
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteParams& params);

SuiteReport matrix_identities_suite(const SuiteParams& p);
SuiteReport map_consistency_suite(const SuiteParams& p);
SuiteReport little_m1_suite(const SuiteParams& p);
SuiteReport big_m1_suite(const SuiteParams& p);
SuiteReport periodic_spectrum_suite(const SuiteParams& p);
SuiteReport periodic_weight_suite(const SuiteParams& p);
SuiteReport weyl_suite(const SuiteParams& p);
SuiteReport dunkl_suite(const SuiteParams& p);
SuiteReport structural_suite(const SuiteParams& p);

}  // namespace cmvp
