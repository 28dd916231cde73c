#pragma once

#include <iosfwd>
#include <vector>

#include "cellcast/cli/config.hpp"

namespace cellcast::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,      ///< I/O or unexpected runtime error
    kExitConfig = 2,       ///< invalid configuration or command line
    kExitValidation = 3,   ///< validate ran but a tolerance check failed
};

/// Absolute agreement required between simulation and closed forms.
inline constexpr double kWastedTolerance = 0.01;
inline constexpr double kSavedTolerance = 0.025;
inline constexpr double kPmfDistanceTolerance = 0.02;

/// Alpha values for a command: the explicit list when given, otherwise the
/// grid 0, step, 2*step, ..., 1.
std::vector<double> alpha_grid(const RunConfig& cfg);

/// `alpha,analytic_saved,analytic_wasted,cr,decision`; the last two columns
/// are empty unless vr and cb are configured.
void cmd_analytic(const RunConfig& cfg, std::ostream& out);

/// Monte Carlo sweep against the closed forms. Writes the sweep table to
/// `out` and one PASS/FAIL line per alpha to `summary`. Returns true when
/// every alpha passes.
bool cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& summary);

/// `role,x,y,cell` for one realization (all MUs, unthinned).
void cmd_snapshot(const RunConfig& cfg, std::ostream& out);

/// Schedule (`slot,content_id`) to `out`; the voting transcript and the
/// efficiency table go to the paths named in the config.
void cmd_schedule(const RunConfig& cfg, std::ostream& out, std::ostream& summary);

/// Full command-line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cellcast::cli
