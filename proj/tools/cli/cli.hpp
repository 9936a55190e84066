#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <hypmetrics/geom.hpp>
#include <hypmetrics/point.hpp>

namespace hypmetrics::cli {

enum ExitCode : int { kOk = 0, kClaimFailed = 1, kDomainError = 2, kParseError = 3 };

// Malformed command-line values or domain files.
class ParseFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "1,0" or "1 0".
Point parse_point(std::string_view text);
/// Comma-separated reals.
std::vector<double> parse_list(std::string_view text);
/// "lo:hi:step" (inclusive of hi up to rounding) or a comma-separated list.
std::vector<double> parse_grid(std::string_view text);

/// Domain from its JSON text.
Domain parse_domain(std::string_view json_text);
/// `spec` is inline JSON when it starts with '{', otherwise a file path.
Domain load_domain(const std::string& spec);

/// Fixed 12 decimals with trailing zeros trimmed.
std::string format_value(double value);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypmetrics::cli
