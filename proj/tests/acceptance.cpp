// Acceptance harness: runs the fifteen verification suites (one per
// acceptance criterion, in order) and prints one PASS/FAIL line each.  The
// process exit code is the number of failed criteria.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "torlab/verify.hpp"

int main() {
    const std::vector<std::string>& names = torlab::verify::suite_names();
    int failures = 0;
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::string line;
        bool pass = false;
        try {
            const torlab::verify::SuiteResult res =
                torlab::verify::run_suite(names[i], 2);
            pass = res.pass;
            line = res.detail;
        } catch (const std::exception& e) {
            pass = false;
            line = std::string("exception: ") + e.what();
        }
        if (!pass) ++failures;
        std::printf("[%2zu/15] %s %-14s %s\n", i + 1, pass ? "PASS" : "FAIL",
                    names[i].c_str(), line.c_str());
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all 15 acceptance criteria pass\n");
    else
        std::printf("%d of 15 acceptance criteria fail\n", failures);
    return failures;
}
