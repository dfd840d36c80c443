// Verification suite runner: one pass/fail line per criterion.

#include <cstring>
#include <iostream>
#include <string>

#include "goldfish/acceptance.hpp"

int main(int argc, char** argv) {
    goldfish::acceptance_options opts;
    int only = 0;
    for (int k = 1; k < argc; ++k) {
        const std::string arg = argv[k];
        if (arg == "--criterion" && k + 1 < argc) {
            only = std::atoi(argv[++k]);
        } else if (arg == "--seed" && k + 1 < argc) {
            opts.seed = static_cast<unsigned>(std::atoi(argv[++k]));
        } else if (arg == "--full") {
            opts.full = true;
        } else if (arg == "--catalog-path" && k + 1 < argc) {
            opts.catalog_path = argv[++k];
        } else {
            std::cerr << "usage: acceptance [--criterion K] [--seed S] [--full]"
                      << " [--catalog-path FILE]\n";
            return 2;
        }
    }

    std::vector<goldfish::criterion_result> results;
    try {
        if (only > 0)
            results.push_back(goldfish::run_criterion(only, opts));
        else
            results = goldfish::run_acceptance(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("[%2d] %s  %s: %s (%.2f s)\n", r.index, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
