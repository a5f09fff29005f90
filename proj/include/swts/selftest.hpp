#pragma once

#include <string>
#include <vector>

namespace swts {

struct SelfCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast invariant suite: Beta-Binomial grid, window-stats oracle, counting
/// lemma, structural scan equivalence, determinism. Output is deterministic.
std::vector<SelfCheck> run_selftest();

}  // namespace swts
