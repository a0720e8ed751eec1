#pragma once

#include <string>
#include <vector>

namespace fockladder {

struct AcceptanceCheck {
    std::string label;
    double measured = 0.0;
    double limit = 0.0;
    std::string comparator; // "<", "<=", ">", ">=", "abs<="
    bool passed = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::vector<AcceptanceCheck> checks;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool all_passed = false;
};

/// Runs the full physics acceptance suite at its pinned tolerances.
AcceptanceReport run_acceptance();

/// Machine-readable report with per-check measured values and limits.
std::string acceptance_report_json(const AcceptanceReport& report);

} // namespace fockladder
