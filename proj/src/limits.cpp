#include "casimir/limits.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/constants.hpp"

namespace casimir {

namespace {

constexpr double vanish_threshold = 1e-3;

LimitRow make_row(const LimitPath& path, const DielectricModel& model, double xi) {
  const double c = constants::c;
  const double q = std::holds_alternative<FixedQ>(path)
                       ? std::get<FixedQ>(path).q
                       : xi * std::sqrt(std::get<FixedP>(path).p * std::get<FixedP>(path).p - 1.0) / c;
  const double gamma0 = std::hypot(q, xi / c);

  LimitRow row{xi, gamma0, 0.0, 0.0, 0.0, 0.0};
  const Extended xi2eps = eval_xi2_eps(model, xi);
  if (xi2eps.is_infinite()) {
    row.gamma1 = row.diff = row.ratio = std::numeric_limits<double>::infinity();
    row.rte2 = 1.0;
    return row;
  }
  const Permittivity eps = eval_eps(model, xi);
  const double delta = eps.is_infinite() ? xi2eps.value() - xi * xi : xi * xi * (eps.value() - 1.0);
  row.gamma1 = std::sqrt(gamma0 * gamma0 + delta / (c * c));
  row.diff = (delta / (c * c)) / (row.gamma1 + gamma0);
  row.ratio = row.gamma1 / gamma0;
  const double rte = -row.diff / (row.gamma1 + gamma0);
  row.rte2 = rte * rte;
  return row;
}

// Non-increasing over rows whose xi lies within the last decade of the ladder.
template <class Metric>
bool settles_downward(const std::vector<LimitRow>& rows, Metric metric) {
  const double window = 10.0 * rows.back().xi * (1.0 + 1e-12);
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (r.xi > window) continue;
    const double v = metric(r);
    if (v > previous) return false;
    previous = v;
  }
  return true;
}

}  // namespace

std::string_view to_string(LimitClass c) {
  switch (c) {
    case LimitClass::TEVanishes: return "TEVanishes";
    case LimitClass::TEIdeal: return "TEIdeal";
    case LimitClass::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

LimitTrace trace_limit(const LimitPath& path, const DielectricModel& model, double xi_start,
                       int decades, int per_decade) {
  if (!(xi_start > 0.0) || !std::isfinite(xi_start)) throw std::invalid_argument("xi_start must be positive");
  if (decades < 3) throw std::invalid_argument("a limit trace needs at least 3 decades");
  if (per_decade < 1) throw std::invalid_argument("per_decade must be >= 1");
  if (const auto* fq = std::get_if<FixedQ>(&path); fq && !(fq->q > 0.0))
    throw std::invalid_argument("fixed-q path needs q > 0");
  if (const auto* fp = std::get_if<FixedP>(&path); fp && !(fp->p >= 1.0))
    throw std::invalid_argument("fixed-p path needs p >= 1");

  LimitTrace trace{path, model, {}};
  const int steps = decades * per_decade;
  trace.rows.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    const double xi = xi_start * std::pow(10.0, -static_cast<double>(k) / per_decade);
    trace.rows.push_back(make_row(path, model, xi));
  }
  return trace;
}

LimitClass classify_limit(const LimitTrace& trace) {
  const auto& rows = trace.rows;
  if (rows.size() < 2 || std::log10(rows.front().xi / rows.back().xi) < 3.0 - 1e-9)
    throw std::invalid_argument("classification needs at least 3 decades of rows");

  const LimitRow& last = rows.back();
  if (last.rte2 < vanish_threshold && settles_downward(rows, [](const LimitRow& r) { return r.rte2; }))
    return LimitClass::TEVanishes;
  if (1.0 - last.rte2 < vanish_threshold &&
      settles_downward(rows, [](const LimitRow& r) { return 1.0 - r.rte2; }))
    return LimitClass::TEIdeal;
  return LimitClass::Indeterminate;
}

}  // namespace casimir
