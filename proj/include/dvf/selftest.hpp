#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dvf {

struct SelftestResult {
    std::string name;
    bool passed = false;
    unsigned cases = 0;
    std::string detail;  // first failure, if any
};

// Quick randomized runs of the library invariants, deterministic in seed.
std::vector<SelftestResult> run_selftest(std::uint64_t seed = 0);

}  // namespace dvf
