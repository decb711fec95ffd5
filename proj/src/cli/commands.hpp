#pragma once

#include <ostream>

#include "cli/config.hpp"

namespace rchp::cli {

// Subcommands write machine-readable files under cfg.out_dir and a human
// summary to `out`. Errors are reported by throwing (input_error -> exit 2,
// anything else -> exit 1); see tools/rchp_main.cpp.
void cmd_thresholds(const RunConfig& cfg, std::ostream& out);
void cmd_simulate(const RunConfig& cfg, std::ostream& out);
void cmd_heatmap(const RunConfig& cfg, std::ostream& out);
void cmd_size(const RunConfig& cfg, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, std::ostream& out);
void cmd_breakeven(const RunConfig& cfg, std::ostream& out);
void cmd_forecast(const RunConfig& cfg, std::ostream& out);

// %.9g rendering used for every number in reports (byte-stable output).
std::string fmt9(double v);
double round9(double v);

} // namespace rchp::cli
