// Batch experiment drivers: resolve sweep grids, run the simulations for one
// subcommand, and lay the aggregates out as a printable table.
#pragma once

#include <string>
#include <vector>

#include "sellback/config.hpp"

namespace sellback {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    // Comma-separated text with a header row; numbers carry 9 significant
    // digits so reruns diff cleanly.
    std::string to_csv() const;
};

// Grid actually used by a subcommand, after defaults.
GridSpec resolved_grid(const RunConfig& run, Subcommand cmd, const std::string& param);

Table run_experiment(const MarketScenario& scenario, const RunConfig& run,
                     Subcommand cmd, Execution exec = Execution::Parallel);

}  // namespace sellback
