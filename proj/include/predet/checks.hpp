#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace predet {

struct PropertyResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Pre-determinant laws: additivity of L on 500 near-identity pairs,
// conjugation invariance, inverse antisymmetry, and the projection-loop
// value tau(p) on 50 seeded projections.
std::vector<PropertyResult> run_predet_suite(std::uint64_t seed);

// Chain calculus: d2 . d3 = 0 on 1000 seeded random 3-chains over Z^2 and
// H3, coboundary pairings vanish on cycles, hopf_to_bar outputs are cycles.
std::vector<PropertyResult> run_chains_suite(std::uint64_t seed);

// exp/log round trips for the series log and the unitary principal log,
// 1000 samples each, plus the bound ||log u|| <= 2 ||u - I|| on ||u-I|| < 1/2.
std::vector<PropertyResult> run_logs_suite(std::uint64_t seed);

std::vector<PropertyResult> run_suite(const std::string& name, std::uint64_t seed);

inline bool all_pass(const std::vector<PropertyResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace predet
