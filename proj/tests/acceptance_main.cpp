// Acceptance suite: one pass/fail line per criterion; nonzero exit on any
// failure. An optional argument overrides the fixture seed.

#include <cstdio>
#include <cstdlib>

#include "acceptance.hpp"

int main(int argc, char** argv) {
    unsigned long long seed = 20260809ull;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

    auto results = qcf::run_acceptance(seed);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s (%s)\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
