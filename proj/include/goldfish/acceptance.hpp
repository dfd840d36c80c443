#pragma once

#include <string>
#include <vector>

namespace goldfish {

struct criterion_result {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct acceptance_options {
    unsigned seed = 0;
    bool full = false;              // adds the slow four-body symbolic checks
    std::string catalog_path;       // optional catalog JSON override
};

inline constexpr int kCriterionCount = 11;

// Runs one numbered check of the verification suite (1-based).
criterion_result run_criterion(int index, const acceptance_options& opts);

// All checks, plus the four-body extras when opts.full is set.
std::vector<criterion_result> run_acceptance(const acceptance_options& opts);

}  // namespace goldfish
