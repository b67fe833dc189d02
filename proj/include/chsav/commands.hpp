#pragma once

#include "chsav/config.hpp"
#include "chsav/harness.hpp"

namespace chsav {

// Runs the simulation, writes <out>/trace.csv and one snapshot file per
// requested time. Returns the process exit status.
int cmd_run(const RunConfig& config);

// Runs a convergence study, writes <out>/conv_{time,space}.{csv,txt} and
// prints the table. Returns 0 when all observed rates fall inside the
// configured bands, 3 otherwise.
int cmd_convergence(StudyKind kind, const RunConfig& config);

}  // namespace chsav
