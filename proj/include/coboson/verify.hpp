#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coboson {

struct VerifyOptions {
    int max_n = 5;             // largest composite number exercised
    int max_m = 8;             // largest random spectrum length
    std::uint64_t seed = 20240601;
    double tolerance = 1e-10;  // relative, before tail allowances
};

struct SuiteResult {
    std::string name;
    int cases = 0;
    // Largest relative error among comparisons whose allowance is the base
    // tolerance (i.e. not dominated by a truncation-tail bound).
    double max_rel_err = 0.0;
    // Largest err/allowance over all comparisons, tail-dominated included;
    // below 1 means every comparison sat inside its documented bound.
    double worst_allowance_fraction = 0.0;
    bool passed = true;
    std::string detail;  // filled on failure
};

// Cross-checks every computation route against an independent one:
// recurrences vs brute-force enumeration, closed forms vs the DP path,
// Newton's identities vs the DP path, and the Fock-space oracle vs the
// formula path. Throws SizeGuardError when the requested sizes exceed the
// enumeration guards.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

}  // namespace coboson
