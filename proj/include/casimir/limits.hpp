#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "casimir/dielectric.hpp"

namespace casimir {

/// Approach xi -> 0 holding the transverse wave number fixed (rad/m).
struct FixedQ {
  double q;
};

/// Approach xi -> 0 holding the Lifshitz variable fixed, q = xi sqrt(p^2 - 1) / c.
struct FixedP {
  double p;
};

using LimitPath = std::variant<FixedQ, FixedP>;

struct LimitRow {
  double xi;      ///< rad/s
  double gamma0;  ///< rad/m
  double gamma1;  ///< rad/m, +inf for an ideal metal
  double diff;    ///< gamma1 - gamma0
  double ratio;   ///< gamma1 / gamma0
  double rte2;    ///< r_TE^2
};

struct LimitTrace {
  LimitPath path;
  DielectricModel model;
  std::vector<LimitRow> rows;  ///< xi strictly decreasing
};

enum class LimitClass { TEVanishes, TEIdeal, Indeterminate };

std::string_view to_string(LimitClass c);

/// Geometric ladder xi_k = xi_start 10^(-k / per_decade), k = 0 .. decades * per_decade.
/// Requires xi_start > 0, decades >= 3, per_decade >= 1.
LimitTrace trace_limit(const LimitPath& path, const DielectricModel& model, double xi_start,
                       int decades, int per_decade);

/// TEVanishes when the final r_TE^2 < 1e-3 and r_TE^2 is non-increasing over the last
/// decade; TEIdeal on the same test applied to 1 - r_TE^2; Indeterminate otherwise.
/// The thresholds are heuristics tuned for metallic parameters over long ladders.
LimitClass classify_limit(const LimitTrace& trace);

}  // namespace casimir
