#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace casimir::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_computation = 3;

/// Bad flag value or inconsistent options; maps to exit_usage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "9eV", "0.035 eV", "1.37e16rad/s" -> rad/s. Throws UsageError without a recognised unit.
double parse_frequency(std::string_view text);

/// Fixed CSV number format: scientific, 9 significant digits.
std::string format_number(double value);

/// Gap grid from d_min to d_max inclusive.
std::vector<double> gap_grid(double d_min, double d_max, int points, bool log_spacing);

/// Entry point shared by the executable and the tests. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
