/*
 * cli.hpp
 * -------
 * Command-line front end. run_cli parses argv, runs one subcommand and
 * writes its text or JSON rendering to `out`; diagnostics go to `err`.
 *
 * Exit codes: 0 success (and every catalog check passed), 1 computation error
 * or failed check, 2 usage error or unreadable catalog.
 */
#pragma once

#include <ostream>
#include <string>
#include <utility>

namespace lgforge {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Smallest (rank, param_rank) under which the expression text parses with the
// default variable and parameter names.
std::pair<int, int> infer_layout(const std::string& text);

}  // namespace lgforge
