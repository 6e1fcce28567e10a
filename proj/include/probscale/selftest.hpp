/**
 * @file selftest.hpp
 * @brief Hermetic invariant checks runnable from the CLI.
 *
 * Everything here is deterministic, touches no files, and finishes in
 * well under a minute: exponent identities and golden tables, Gaussian
 * square-root-cancellation concentration, the resonance-weight magnitude
 * bound, amplitude homogeneity of the second iterate, Parseval for the
 * Sobolev norm, exactness of the log-log fit on power laws, and the
 * regime-comparison inequalities.
 */
#pragma once

#include <string>
#include <vector>

namespace probscale::selftest {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> run();

/// True iff every check passed.
bool all_passed(const std::vector<CheckResult>& results);

} // namespace probscale::selftest
