// acceptance_main.cpp: One PASS/FAIL line per reproduction criterion, followed by the
// individual checks. Exit status is nonzero when any selected criterion fails.

#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "spinbath/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spinbath acceptance checks"};
    std::vector<int> ids;
    spinbath::acceptance::Options opts;
    app.add_option("--criterion,-c", ids, "criterion numbers to run (default: all)")
        ->check(CLI::Range(1, spinbath::acceptance::kCriterionCount));
    app.add_option("--gamma-scale", opts.gamma_scale, "multiply the damping rate (sensitivity runs)");
    app.add_option("--tol-scale", opts.tol_scale, "multiply quadrature tolerances");
    CLI11_PARSE(app, argc, argv);

    if (ids.empty())
        for (int i = 1; i <= spinbath::acceptance::kCriterionCount; ++i) ids.push_back(i);

    int failed = 0;
    for (int id : ids) {
        try {
            const auto result = spinbath::acceptance::run_criterion(id, opts);
            spinbath::acceptance::print(std::cout, result);
            failed += !result.passed();
        } catch (const std::exception& e) {
            std::cout << "FAIL  criterion " << id << ": error: " << e.what() << '\n';
            ++failed;
        }
        std::cout.flush();
    }
    return failed == 0 ? 0 : 1;
}
