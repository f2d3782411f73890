#pragma once

#include <string>
#include <vector>

namespace udw {

// One named verification suite.  `detail` lists every failed check
// (empty on success); `seconds` is the suite wall time.
struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Suite names in canonical order:
//   inertial      closed-form QFI on the inertial worldline + ODE cross-check
//   thermality    numeric rates reproduce the Unruh detailed-balance ratio
//   expansion     numeric-vs-truncated rate difference scales as w^4
//   routes        closed-form / Bloch-derivative / SLD agreement on a grid
//   figures       symmetry, monotonicity, plateau and shape properties
//   ultrarel      w -> infinity limit and the finite-w 1/w^4 scaling
//   derivatives   analytic d omega / d beta vs finite differences
//   determinism   repeated figure runs emit byte-identical tables
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name);
std::vector<SuiteResult> run_all_suites();

}  // namespace udw
