// acceptance.hpp: The reproduction checks run by the acceptance binary and
// by `spinbath reproduce`

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinbath::acceptance {

struct Check {
    std::string name;
    bool passed{false};
    double achieved{0.0};
    double tolerance{0.0};
    std::string detail;
};

struct CriterionResult {
    int id{0};
    std::string title;
    std::vector<Check> checks;
    double seconds{0.0};

    bool passed() const;
};

struct Options {
    double gamma_scale{1.0};  // multiplies gamma(omega) in the Table I run
    double tol_scale{1.0};    // multiplies quadrature tolerances in the Table I run
};

inline constexpr int kCriterionCount = 8;

CriterionResult run_criterion(int id, const Options& opts = {});

// One summary line per criterion, then its checks indented below.
void print(std::ostream& out, const CriterionResult& r);

} // namespace spinbath::acceptance
