#pragma once

#include <string>
#include <utility>
#include <vector>

#include "evfront/oracle.hpp"

namespace evfront::checks {

enum class Profile { Quick, Full };
const char* to_string(Profile p);

struct CheckResult {
    int id = 0;
    std::string key;
    bool passed = false;
    std::string detail;
    std::vector<std::pair<std::string, double>> measured;
    double seconds = 0.0;
};

CheckResult cross_oracle(Profile p);
CheckResult boundary_identity(Profile p);
CheckResult causality(Profile p);
CheckResult front_velocity_consistency(Profile p);
CheckResult jump_compensation(Profile p);
CheckResult gauss_convergence(Profile p);
CheckResult evanescent_hierarchy(Profile p);
CheckResult band_limited(Profile p);
CheckResult phase_map_structure(Profile p);

// Quick: cross-oracle, boundary, causality, front velocity, jump/continuity and phase map on
// reduced samples. Full: every check on its complete sample.
std::vector<CheckResult> run_all(Profile p);

}  // namespace evfront::checks
