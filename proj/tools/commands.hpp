#pragma once

#include <iosfwd>

#include "config.hpp"

namespace nestres::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,     ///< config parse/validation error, unsupported request
    kExitShortfall = 2,  ///< fewer roots than resonators; partial output written
    kExitMismatch = 3,   ///< table1 regression failed
    kExitSelftest = 4,   ///< at least one invariant failed
    kExitRuntime = 5,    ///< numerical failure (e.g. mode residual too large)
};

int cmd_freqs(const RunConfig& cfg, std::ostream& out);
int cmd_table1(const RunConfig& cfg, std::ostream& out);
int cmd_modes(const RunConfig& cfg, std::ostream& out);
int cmd_asymptotic(const RunConfig& cfg, std::ostream& out);
int cmd_selftest(const RunConfig& cfg, std::ostream& out);

}  // namespace nestres::cli
