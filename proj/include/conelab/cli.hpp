#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "conelab/errors.hpp"

namespace conelab::cli {

/// Exit codes; see README for the table.
enum Exit : int {
  kOk = 0,
  kNegative = 1,        // hypothesis fails, or the iso battery passed but the map is not affine
  kBadInput = 2,        // parse errors and invalid input
  kNotPointed = 3,
  kViolation = 4,       // battery violation with witness
  kUndefinedLattice = 5,
  kNotPositiveDefinite = 6,
  kInternal = 7,
};

int exit_code_for(ErrorKind kind);

/// Runs one command; `args` excludes the program name. Reports go to `out`
/// (or the --out file), diagnostics and --summary lines to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conelab::cli
