// Acceptance suite: runs every verification check once and prints one
// pass/fail line per criterion.  The process exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <string>

#include "singinv/verify.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    const auto suite_start = clock::now();
    bool all = true;
    int index = 0;
    for (const auto& id : singinv::verify_check_ids()) {
        const auto t0 = clock::now();
        singinv::CheckResult r = singinv::run_verify_check(id, 1);
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        ++index;
        std::printf("%-4s criterion %2d  %-14s %s  (%.2fs)\n",
                    r.pass ? "PASS" : "FAIL", index, r.id.c_str(),
                    r.title.c_str(), secs);
        if (!r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
        if (!r.pass) all = false;
    }
    double total =
        std::chrono::duration<double>(clock::now() - suite_start).count();
    std::printf("%s (%.2fs total)\n",
                all ? "acceptance suite passed" : "ACCEPTANCE SUITE FAILED",
                total);
    return all ? 0 : 1;
}
