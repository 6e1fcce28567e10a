/**
 * @file cli.hpp
 * @brief Command-line driver, factored for testing.
 *
 * Exit codes: 0 success, 1 scientific verdict failure (bound violated or
 * slope out of tolerance), 2 usage or config error.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace probscale::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace probscale::cli
