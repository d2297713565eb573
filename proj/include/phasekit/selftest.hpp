#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasekit {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Run the full verification suite: closed forms, oracle cross-checks,
/// POVM dominance, discretization identity, Monte Carlo consistency and the
/// worked examples.  Every tolerance is fixed in code.
std::vector<CriterionResult> run_acceptance_suite();

/// Print one PASS/FAIL line per criterion; returns the number of failures.
int print_acceptance_report(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace phasekit
