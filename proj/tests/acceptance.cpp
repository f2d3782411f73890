// Acceptance gate: runs every verification suite and prints one line per
// criterion.  Exits nonzero if any criterion fails.

#include "udw/verify.hpp"

#include <cstdio>
#include <iostream>

int main() {
    const char* descriptions[] = {
        "inertial limit (closed forms + ODE oracle)",
        "Unruh thermality (numeric rates, detailed balance)",
        "expansion order (numeric vs truncated rates ~ w^4)",
        "route equivalence (closed / Bloch / SLD)",
        "figure properties (symmetry, monotonicity, plateaus)",
        "ultra-relativistic limit (1/w^4 scaling, frozen QFI)",
        "derivative checks (analytic vs finite-difference d/dbeta)",
        "determinism (byte-identical repeated figure output)",
    };
    int criterion = 0;
    bool all_passed = true;
    for (const auto& name : udw::suite_names()) {
        const udw::SuiteResult res = udw::run_suite(name);
        ++criterion;
        std::printf("criterion %d [%s] %s: %s (%.2fs)\n", criterion,
                    res.passed ? "PASS" : "FAIL", name.c_str(), descriptions[criterion - 1],
                    res.seconds);
        if (!res.passed) {
            std::cout << res.detail;
            all_passed = false;
        }
    }
    return all_passed ? 0 : 1;
}
