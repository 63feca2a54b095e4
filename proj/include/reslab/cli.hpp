#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reslab/hadamard.hpp"
#include "reslab/rootscan.hpp"

namespace reslab {

// reslab <subcommand> --config <path> [--out <dir>] [--seed <int>]
// args excludes the program name. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Columnar plot series. Both throw "nothing to plot" on empty input.
void emit_plot_data(const ZeroSet& z, const std::string& path);
void emit_plot_data(const StabilityTable& t, const std::string& path);

}  // namespace reslab
