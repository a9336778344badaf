#pragma once

#include <string>
#include <vector>

namespace blpack {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Structural invariants over the corpus: combinatorics, angle-sum
/// targets, tangencies, Gauss-Bonnet, recomputed branch sets, valence,
/// the Schwarz comparison at every interior vertex, and angle identities.
std::vector<CheckResult> run_invariant_suite();

}  // namespace blpack
