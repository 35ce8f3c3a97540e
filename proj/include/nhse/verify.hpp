#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nhse::verify {

struct CheckResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // measured value vs tolerance, one line
};

/// Run the full acceptance suite. scratch_dir hosts the files written by the
/// determinism check; seed drives the randomized equivalence sweep.
std::vector<CheckResult> run_all(std::uint64_t seed, const std::string& scratch_dir);

/// Print one pass/fail line per check to stdout and return the failure count.
int report(const std::vector<CheckResult>& results);

} // namespace nhse::verify
