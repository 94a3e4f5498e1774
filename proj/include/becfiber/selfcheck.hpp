#pragma once

// Built-in consistency suite behind the `selfcheck` subcommand: limit
// values, closed-form vs quadrature agreement, oracle equivalence, waist
// optimality, the angular and atom-number trends, the scaling laws, and
// the pulse-amplitude checks, each with its tolerance pinned in code.

#include <string>
#include <vector>

namespace becfiber {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<CheckResult> run_selfcheck();

}  // namespace becfiber
