#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hopfsmooth::cli {

/// Runs one command line (without the program name), writing the report to
/// `out`. Returns the process exit code: 0 ok, 2 input error, 3 resource
/// limit, 4 engine invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out);

/// Primes listed by "2..97", "2,3,5" or a mix of both.
std::vector<long> parse_primes(const std::string& text);

}  // namespace hopfsmooth::cli
