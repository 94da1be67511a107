#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varifold::cli {

/// Runs one CLI command. Structured JSON goes to out, diagnostics to err.
/// Exit codes: 0 success/true, 1 property false, 2 input error, 3 undecided
/// (search cap). VARIFOLD_CAP overrides the default node budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace varifold::cli
