#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qhyp {

// Exit codes: 0 ok/positive, 1 NotCongruent/NotConjugate (or a failed expectation/criterion),
// 2 malformed input or violated hypotheses, 3 Inconclusive.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhyp
