#pragma once

#include "run_config.hpp"

namespace exmort {

/// Subcommand bodies. Each validates its inputs, runs the pipeline and
/// writes its output files into config.out_dir; failures are thrown as
/// Error and mapped to exit codes by the entry point.
void cmd_fit(const RunConfig& config);
void cmd_excess(const RunConfig& config);
void cmd_sweep(const RunConfig& config);
void cmd_standardize(const RunConfig& config);
void cmd_rebase_diff(const RunConfig& config);
void cmd_figures(const RunConfig& config);

} // namespace exmort
