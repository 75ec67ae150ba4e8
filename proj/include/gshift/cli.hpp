#pragma once
// The gshift command-line driver. Lives in the library so tests can run it
// in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace gshift {

/// args excludes the program name. Exit status: 0 pass or completed, 2 a
/// FAIL verdict, 3 low confidence or skipped, 1 usage or runtime error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a..b" doubles from a up to b; otherwise a comma list. Throws DomainError.
std::vector<int> parse_int_range(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
/// A number, or "inf" / "infinity" (any case).
double parse_p(const std::string& text);

}  // namespace gshift
