#pragma once

#include <cstddef>
#include <functional>

namespace casimir {

struct QuadSpec {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 2000;
  /// Integration stops at a + tail_cut; the remainder is bounded analytically.
  double tail_cut = 60.0;

  /// Throws std::invalid_argument when a field is outside its admissible range.
  void validate() const;
};

struct QuadResult {
  double value;
  double error_estimate;
};

using Integrand = std::function<double(double)>;

/// Integral of f over [a, inf) for integrands bounded by C y^2 exp(-y).
///
/// Globally adaptive Gauss-Kronrod (7/15) bisection on [a, a + tail_cut]. The
/// omitted tail is bounded by |f(b)| (b^2 + 2b + 2) / b^2 with b = a + tail_cut and
/// added to the error estimate. Panel sums are accumulated in left-to-right order,
/// so the result does not depend on the refinement history.
/// Throws ConvergenceError (with the best value) if max_subdivisions is exhausted.
QuadResult integrate_decaying(const Integrand& f, double a, const QuadSpec& spec = {});

/// Composite trapezoid on [a, cut] with n_points nodes. Test oracle only.
double oracle_trapezoid(const Integrand& f, double a, double cut, std::size_t n_points);

}  // namespace casimir
