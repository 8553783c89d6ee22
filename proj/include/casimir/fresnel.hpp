#pragma once

#include "casimir/dielectric.hpp"

namespace casimir {

enum class Mode { TE, TM };

/// Rule for the zero-frequency TE reflectivity, the term the two treatments disagree on.
enum class Prescription {
  PointwiseLimit,  ///< lim xi->0 of r_TE^2 at fixed q (vanishes for Drude metals)
  IdealTEZero,     ///< r_TE^2 = 1 for any conductor, so the n=0 TE factor is 1 - exp(-2 gamma0 d)
};

/// Evanescent wave number sqrt(q^2 + eps xi^2 / c^2), rad/m. Returns +inf when eps
/// is infinite (including xi == 0, where the field cannot enter a perfect conductor).
double gamma(double q, double xi, Permittivity eps);

/// gamma1 / gamma0 at Lifshitz variable p >= 1, i.e. sqrt(p^2 - 1 + eps) / p.
/// +inf when eps(i xi) is infinite (every conductor at xi == 0).
double gamma_ratio(double p, double xi, const DielectricModel& model);

/// Reflection amplitude at transverse wave number q and imaginary frequency xi.
/// TE uses (gamma0 - gamma1)/(gamma0 + gamma1) and is <= 0; TM uses
/// (eps gamma0 - gamma1)/(eps gamma0 + gamma1) and is >= 0. At xi == 0 the
/// pointwise limit is taken through eval_xi2_eps. Throws std::invalid_argument at q == xi == 0.
double r_mode(Mode mode, double q, double xi, const DielectricModel& model);

/// Same as r_mode, parameterized by the vacuum decay constant kappa0 = gamma0 >= xi/c.
/// This is the form the Matsubara integrals use (no cancellation in q).
double reflection_from_kappa(Mode mode, double kappa0, double xi, const DielectricModel& model);

/// r^2 on the zero-frequency axis at q > 0 under the given prescription.
double r2_zero_frequency(Mode mode, double q, const DielectricModel& model,
                         Prescription prescription);

}  // namespace casimir
