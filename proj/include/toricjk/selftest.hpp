#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace toricjk {

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Quick internal consistency suites; cheap enough to run from the CLI.
std::vector<SelftestResult> run_selftest(std::uint64_t seed = 0);

}  // namespace toricjk
