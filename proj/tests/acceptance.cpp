// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>

#include "fctp/verify.hpp"

namespace {

// Wall-clock budgets; 0 means untimed.
constexpr double kDpOracleBudgetSeconds = 10.0;
constexpr double kReductionBudgetSeconds = 60.0;

bool run_criterion(int number, const char* name, double budget_seconds,
                   const std::function<fctp::SuiteReport()>& suite) {
    auto start = std::chrono::steady_clock::now();
    fctp::SuiteReport rep = suite();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = budget_seconds <= 0 || seconds <= budget_seconds;
    bool ok = rep.ok() && in_budget;
    std::printf("criterion %d %s: %s (%d/%d checks, %.2f s)\n", number, name,
                ok ? "PASS" : "FAIL", rep.checks - rep.failures, rep.checks, seconds);
    std::fflush(stdout);
    if (!in_budget)
        std::fprintf(stderr, "  over budget: %.2f s > %.2f s\n", seconds, budget_seconds);
    for (const std::string& note : rep.notes) std::fprintf(stderr, "  %s\n", note.c_str());
    return ok;
}

}  // namespace

int main() {
    bool ok = true;
    ok &= run_criterion(1, "dp-oracle", kDpOracleBudgetSeconds,
                        [] { return fctp::verify_dp_oracle(200, 1); });
    ok &= run_criterion(2, "certificates", 0, [] { return fctp::verify_certificates(200, 1); });
    ok &= run_criterion(3, "lift-z", 0, [] { return fctp::verify_lift_z(20, 1, 100); });
    ok &= run_criterion(4, "pi-chain", 0, [] { return fctp::verify_pi_chain(20, 1, 50, 20); });
    ok &= run_criterion(5, "reduction", kReductionBudgetSeconds,
                        [] { return fctp::verify_reduction(); });
    ok &= run_criterion(6, "generator-contract", 0,
                        [] { return fctp::verify_generator_contract(); });
    ok &= run_criterion(7, "counts-roundtrip", 0, [] { return fctp::verify_counts_roundtrip(); });
    ok &= run_criterion(8, "state-counts", 0, [] { return fctp::verify_state_counts(200, 1); });
    return ok ? 0 : 1;
}
