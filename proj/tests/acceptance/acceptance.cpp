#include "gc/audit.hpp"

#include <CLI11.hpp>

#include <iostream>

// One line per criterion; exit status 0 iff every criterion passes within its limit.
int main(int argc, char** argv)
{
    CLI::App app("Acceptance suite");
    std::vector<int> only;
    gc::AuditOptions options;
    app.add_option("--only", only, "Criterion numbers to run");
    app.add_option("--seed", options.seed, "Seed for randomized relabelings");
    CLI11_PARSE(app, argc, argv);
    if (!only.empty())
        options.only = std::set<int>(only.begin(), only.end());
    bool all = true;
    gc::run_audit(options, [&](const gc::CriterionResult& r) {
        std::cout << gc::format_result(r) << std::endl;
        all = all && r.passed;
    });
    return all ? 0 : 1;
}
