#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcf {

struct CriterionResult {
    int id{0};
    std::string name;
    bool passed{false};
    std::string detail;
};

/// Run every acceptance criterion at its pinned tolerance. Deterministic in
/// the seed.
std::vector<CriterionResult> run_acceptance(uint64_t seed);

std::string acceptance_to_json(const std::vector<CriterionResult>& results);

} // namespace qcf
