#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evfront/checks.hpp"
#include "evfront/cli/config.hpp"
#include "evfront/cli/output.hpp"
#include "evfront/phasemap.hpp"

namespace evfront::cli {

enum ExitCode : int { Success = 0, ValidationError = 1, NumericalFailure = 2, InvariantFailure = 3 };

struct CommandOutput {
    Table table;
    bool numerical_failure = false;  // some point failed to converge
};

// Grid points go to `jobs` workers (0: one per hardware thread); rows come back in grid order,
// x outer and t inner.
CommandOutput simulate(const RunConfig& cfg, int jobs);
CommandOutput decompose(const RunConfig& cfg, int jobs);
CommandOutput front(const RunConfig& cfg);

struct PhaseMapOutput {
    std::vector<ContourPolyline> contours;  // sheets outer, then quantities, then levels
    std::vector<std::pair<Sheet, double>> normalization;
};
PhaseMapOutput phasemap(const RunConfig& cfg, int jobs);

// Config written into every record: the effective run config without the output path.
nlohmann::json echo_config(const RunConfig& cfg);

// Full command line: args excludes the program name. Records go to the output path or `out`,
// diagnostics to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evfront::cli
