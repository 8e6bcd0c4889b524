#pragma once

// The acceptance suite: twelve exhaustive checks, each with its own time limit.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gc {

struct AuditOptions {
    std::optional<std::set<int>> only; // run a subset of criteria
    std::uint64_t seed = 20240917;     // random relabelings in the parameter checks
    bool parallel = true;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;     // checks passed and within the time limit
    bool checks_ok = false;  // checks passed, regardless of time
    double seconds = 0;
    double limit_seconds = 0;
    std::string detail;
};

std::vector<CriterionResult> run_audit(const AuditOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

/// One-line rendering: "[PASS] 4 coalgebra number = tree-depth ... (1.23 s / 300 s): detail".
std::string format_result(const CriterionResult& r);

} // namespace gc
