#pragma once

#include <string>
#include <vector>

namespace torlab::verify {

// One verification suite = one acceptance criterion. `detail` is a one-line
// human summary quoting the measured numbers; `report_json` is a byte-stable
// JSON document (no timestamps, no thread counts) suitable for diffing.
struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::string report_json;
};

// The fifteen suite names, in criterion order.
const std::vector<std::string>& suite_names();

// Run one suite. `threads` parallelizes independent sample evaluations inside
// the suite; it never changes any computed value. Unknown names throw
// std::invalid_argument.
SuiteResult run_suite(const std::string& name, int threads = 1);

} // namespace torlab::verify
