#ifndef FLAGROCK_SELFTEST_HPP
#define FLAGROCK_SELFTEST_HPP

// Built-in invariant suite over every instance with p + q below a bound:
// the matrix oracle against the structure-constant table, frame brackets
// against their closed formulas, the nilpotent projection, exterior
// anticommutation, the symbol composition identity, representation
// soundness, and the witness residuals.

#include <string>

namespace flagrock {

struct SelftestResult {
    bool ok = true;
    std::string failed_invariant;
    std::string detail;
    int instances = 0;
    double seconds = 0.0;
};

// fault: empty for a normal run; "structure-constants" flips one table
// entry so the harness can demonstrate that corruption is caught.
SelftestResult run_selftest(int max_n = 6, const std::string& fault = "");

}  // namespace flagrock

#endif
