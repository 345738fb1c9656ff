#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cqed {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;  // filled in on failure
};

// Deterministic invariant battery across every module; the CLI `validate`
// subcommand prints one line per check and fails on any red entry.
std::vector<CheckResult> run_validation(std::uint64_t seed);

}  // namespace cqed
