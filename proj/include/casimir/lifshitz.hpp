#pragma once

#include <cstddef>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/error.hpp"
#include "casimir/fresnel.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Two identical half-spaces separated by a vacuum gap.
struct PlateSystem {
  double d;  ///< gap, m
  double T;  ///< temperature, K
  DielectricModel model;
  Prescription prescription = Prescription::PointwiseLimit;
};

struct SumConfig {
  /// A Matsubara term counts as negligible once |term| <= term_rel_tol * |partial sum|;
  /// the sum stops after two consecutive negligible terms.
  double term_rel_tol = 1e-9;
  std::size_t max_terms = 200000;
  QuadSpec quad;

  void validate() const;
};

struct TermContribution {
  double te;
  double tm;
};

/// One row of the Matsubara ledger. For n == 0 the 1/2 weight is already applied.
struct TermEntry {
  std::size_t n;
  double xi;  ///< rad/s
  double te;  ///< Pa
  double tm;  ///< Pa
};

struct ForceResult {
  double pressure = 0.0;          ///< Pa, negative is attractive
  double free_energy_area = 0.0;  ///< J/m^2
  double eta = 0.0;               ///< pressure / (-pi^2 hbar c / (240 d^4))
  std::vector<TermEntry> terms;   ///< pressure terms in ascending n
  std::size_t n_used = 0;
  double est_rel_err = 0.0;
};

/// max_terms was reached before the Matsubara sum converged.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, ForceResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const ForceResult& partial() const noexcept { return partial_; }

 private:
  ForceResult partial_;
};

/// xi_n = 2 pi n k_B T / hbar.
double matsubara_xi(std::size_t n, double T);

/// Zero-temperature perfect-conductor pressure -pi^2 hbar c / (240 d^4).
double ideal_pressure_t0(double d);

enum class Quantity { Pressure, FreeEnergy };

/// Per-frequency Lifshitz integrand in y = 2 d kappa0, before the k_B T prefactor.
///
///   Pressure:    y^2 r^2 e^-y / (1 - r^2 e^-y)
///   FreeEnergy:  y ln(1 - r^2 e^-y)
///
/// The reflection coefficient is taken at kappa0 = y / (2d) and xi = xi_n; for n == 0 it
/// comes from r2_zero_frequency under the system's prescription. Integrate from lower_limit().
class LifshitzIntegrand {
 public:
  LifshitzIntegrand(const PlateSystem& system, std::size_t n, Mode mode, Quantity quantity);

  double operator()(double y) const;
  double reflectivity(double y) const;
  /// y_n = 2 d xi_n / c.
  double lower_limit() const { return y_min_; }

 private:
  const PlateSystem* system_;
  std::size_t n_;
  Mode mode_;
  Quantity quantity_;
  double xi_;
  double y_min_;
};

/// Pressure contributions of Matsubara term n >= 1, Pa. Each is <= 0.
TermContribution term_integrals(const PlateSystem& system, std::size_t n, const SumConfig& cfg);

/// The n == 0 contributions with the 1/2 weight applied, Pa.
TermContribution zero_term(const PlateSystem& system, const SumConfig& cfg);

/// Full Matsubara sum for pressure and free energy. Requires T > 0.
/// Throws TruncationError (carrying the partial ledger) if max_terms is hit.
ForceResult pressure(const PlateSystem& system, const SumConfig& cfg = {});

/// Free energy per unit area, J/m^2.
double free_energy(const PlateSystem& system, const SumConfig& cfg = {});

/// Zero-temperature pressure from the continuous-frequency integral.
double pressure_t0(double d, const DielectricModel& model, const SumConfig& cfg = {});

struct PfaResult {
  double force;     ///< N
  bool pfa_valid;   ///< false when R < 100 d
};

/// Sphere-plate force in the proximity force approximation, 2 pi R F(d).
PfaResult pfa_sphere_plate(double radius, const PlateSystem& system, const SumConfig& cfg = {});

}  // namespace casimir
