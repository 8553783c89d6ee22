#include "casimir/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/constants.hpp"

namespace casimir {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

double gamma(double q, double xi, Permittivity eps) {
  if (eps.is_infinite()) return inf;
  return std::hypot(q, std::sqrt(eps.value()) * xi / constants::c);
}

double gamma_ratio(double p, double xi, const DielectricModel& model) {
  if (!(p >= 1.0)) throw std::invalid_argument("Lifshitz variable p must be >= 1");
  const Permittivity eps = eval_eps(model, xi);
  if (eps.is_infinite()) return inf;
  return std::sqrt(p * p - 1.0 + eps.value()) / p;
}

double reflection_from_kappa(Mode mode, double kappa0, double xi, const DielectricModel& model) {
  if (!(kappa0 > 0.0))
    throw std::invalid_argument("reflection requested at the (q, xi) = (0, 0) corner");
  if (model.is<material::IdealMetal>()) return mode == Mode::TE ? -1.0 : 1.0;

  const double c2 = constants::c * constants::c;
  const Permittivity eps = eval_eps(model, xi);

  // delta = xi^2 (eps - 1), finite at xi == 0 through the xi^2 eps product.
  double delta;
  if (xi > 0.0 && !eps.is_infinite()) {
    delta = xi * xi * (eps.value() - 1.0);
  } else {
    delta = eval_xi2_eps(model, xi).value() - xi * xi;
  }
  const double gamma1 = std::sqrt(kappa0 * kappa0 + delta / c2);
  const double sum = kappa0 + gamma1;

  if (mode == Mode::TE) return -(delta / c2) / (sum * sum);

  if (eps.is_infinite()) return 1.0;
  // (eps k0)^2 - gamma1^2 = (eps - 1)(eps k0^2 + q^2)
  const double e = eps.value();
  const double q2 = std::max(0.0, kappa0 * kappa0 - xi * xi / c2);
  const double den = e * kappa0 + gamma1;
  return (e - 1.0) * (e * kappa0 * kappa0 + q2) / (den * den);
}

double r_mode(Mode mode, double q, double xi, const DielectricModel& model) {
  if (!(q >= 0.0) || !(xi >= 0.0)) throw std::invalid_argument("q and xi must be non-negative");
  return reflection_from_kappa(mode, std::hypot(q, xi / constants::c), xi, model);
}

double r2_zero_frequency(Mode mode, double q, const DielectricModel& model,
                         Prescription prescription) {
  if (!(q > 0.0)) throw std::invalid_argument("zero-frequency reflectivity needs q > 0");
  if (mode == Mode::TE && prescription == Prescription::IdealTEZero && model.is_conducting())
    return 1.0;
  const double r = r_mode(mode, q, 0.0, model);
  return r * r;
}

}  // namespace casimir
