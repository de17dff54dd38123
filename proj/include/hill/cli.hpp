#pragma once

// Subcommands of the hillproj tool. Each validates its RunConfig, writes its
// outputs under config.out and returns an exit code.

#include <ostream>
#include <string>
#include <vector>

#include "hill/io.hpp"

namespace hill::cli {

enum ExitCode : int { kPass = 0, kVerdictFailure = 1, kConfigError = 2 };

/// spectrum_eigenvalues.csv, spectrum_counts.csv, spectrum.json
int cmd_spectrum(const RunConfig& config, std::ostream& log);
/// decay.csv, decay.json; B_n<n>.bin per n when dump_matrices is set
int cmd_decay(const RunConfig& config, std::ostream& log, bool dump_matrices = false);
/// bounds.csv, bounds.json
int cmd_bounds(const RunConfig& config, std::ostream& log);
/// lpnorms.csv, lpnorms.json
int cmd_lpnorms(const RunConfig& config, std::ostream& log);
/// verify.csv, verify.json: small-size property suite over all three boundary conditions
int cmd_verify(const RunConfig& config, std::ostream& log);

/// Full command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hill::cli
