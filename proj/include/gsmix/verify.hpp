#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Named self-checks covering every cross-validation property of the
// library: closed forms against numerical oracles, invariants, symmetry
// and monotonicity statements, and sweep determinism. The CLI `verify`
// subcommand and the test suites both run through this registry.

namespace gsmix {

struct CheckResult {
    std::string name;
    long samples = 0;        // evaluations actually performed
    double worst = 0.0;      // worst residual observed
    double tolerance = 0.0;  // pinned pass threshold
    bool pass = false;
    std::string note;        // sampling law or failure detail
};

std::vector<std::string> check_names();

// Runs the named checks (all of them when `names` is empty).
// samples_override > 0 replaces each check's default sample count where a
// sample count applies. Unknown names throw std::invalid_argument.
std::vector<CheckResult> run_checks(const std::vector<std::string>& names = {},
                                    long samples_override = 0,
                                    std::uint64_t seed = 20240817);

} // namespace gsmix
