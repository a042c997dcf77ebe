#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace singinv {

struct CheckResult {
    std::string id;
    std::string title;
    bool pass = false;
    std::string detail; // set on failure or when there is something to report
};

/// Identifiers of all verification checks, in report order.
std::vector<std::string> verify_check_ids();

/// Runs one check; `seed` feeds the randomized ones.
CheckResult run_verify_check(const std::string& id, std::uint64_t seed);

/// Runs all checks (or the subset matching `only`, when non-empty).
std::vector<CheckResult> run_verify(std::uint64_t seed,
                                    const std::string& only = "");

} // namespace singinv
