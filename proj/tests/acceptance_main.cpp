/**
 * @file   acceptance_main.cpp
 * @brief  Runs the eleven acceptance suites and prints one PASS/FAIL line each.
 *
 * Exit status is 0 when every suite passes or fails only through a known
 * discrepancy (a literal display that contradicts the conventions it is
 * stated in); any other failure exits 1.
 */
#include "hchow/cli.hpp"
#include "hchow/suites.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Acceptance suites"};
    hchow::SuiteOptions opts{hchow::default_seed(), hchow::default_data_dir()};
    std::vector<int> ids;
    app.add_option("--seed", opts.seed, "Seed; every suite derives its own stream from it");
    app.add_option("--data", opts.data_dir, "Directory of the shipped manifests");
    app.add_option("--criterion", ids, "Run only these criteria")->check(CLI::Range(1, hchow::kCriterionCount));
    CLI11_PARSE(app, argc, argv);
    if (ids.empty())
        for (int i = 1; i <= hchow::kCriterionCount; ++i) ids.push_back(i);

    std::cout << "seed " << opts.seed << "\n";
    std::vector<hchow::CriterionResult> results;
    for (int id : ids) {
        results.push_back(hchow::run_criterion(id, opts));
        std::cout << results.back().line() << std::endl;
    }
    std::size_t pass = 0, known = 0;
    for (const auto& r : results) {
        if (r.pass) ++pass;
        else if (r.known_discrepancy) ++known;
    }
    std::cout << pass << " passed, " << known << " failed with a known discrepancy, "
              << results.size() - pass - known << " failed\n";
    return hchow::acceptable(results) ? 0 : 1;
}
