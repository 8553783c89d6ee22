#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/error.hpp"

namespace casimir {

namespace {

// Kronrod 15-point abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

Panel gauss_kronrod(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double fc = f(center);
  double kronrod = fc * kronrod_w[7];
  double gauss = fc * gauss_w[3];
  double abs_sum = std::abs(kronrod);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kronrod_x[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kronrod_w[j] * (f1 + f2);
    abs_sum += kronrod_w[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += gauss_w[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);

  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  return Panel{lo, hi, kronrod, std::max(std::abs(kronrod - gauss), roundoff)};
}

}  // namespace

void QuadSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw std::invalid_argument("rel_tol must be in (0, 1e-3]");
  if (!(abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be >= 0");
  if (max_subdivisions < 16) throw std::invalid_argument("max_subdivisions must be >= 16");
  if (!(tail_cut >= 20.0)) throw std::invalid_argument("tail_cut must be >= 20");
}

QuadResult integrate_decaying(const Integrand& f, double a, const QuadSpec& spec) {
  spec.validate();
  if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("lower limit must be finite and >= 0");

  const double b = a + spec.tail_cut;
  const double fb = std::abs(f(b));
  const double tail_bound = fb * (1.0 + 2.0 / b + 2.0 / (b * b));

  std::priority_queue<Panel, std::vector<Panel>, ByError> panels;
  panels.push(gauss_kronrod(f, a, b));
  double total = panels.top().value;
  double total_err = panels.top().error;

  std::size_t subdivisions = 0;
  auto converged = [&] {
    return total_err <= std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
  };
  while (!converged()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw ConvergenceError("adaptive quadrature did not reach tolerance after " +
                                 std::to_string(subdivisions) + " subdivisions",
                             total, total_err + tail_bound);
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = gauss_kronrod(f, worst.lo, mid);
    const Panel right = gauss_kronrod(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  // Re-sum in a fixed spatial order.
  std::vector<Panel> done;
  done.reserve(panels.size());
  while (!panels.empty()) {
    done.push_back(panels.top());
    panels.pop();
  }
  std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  double value = 0.0;
  double error = 0.0;
  for (const auto& p : done) {
    value += p.value;
    error += p.error;
  }
  return QuadResult{value, error + tail_bound};
}

double oracle_trapezoid(const Integrand& f, double a, double cut, std::size_t n_points) {
  if (n_points < 10000) throw std::invalid_argument("oracle trapezoid needs at least 1e4 points");
  if (!(cut > a)) throw std::invalid_argument("cut must exceed the lower limit");
  const double h = (cut - a) / static_cast<double>(n_points - 1);
  double sum = 0.5 * (f(a) + f(cut));
  for (std::size_t k = 1; k + 1 < n_points; ++k) sum += f(a + h * static_cast<double>(k));
  return sum * h;
}

}  // namespace casimir
