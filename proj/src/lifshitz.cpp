#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "casimir/constants.hpp"

namespace casimir {

using constants::c;
using constants::hbar;
using constants::k_B;
using constants::pi;

namespace {

void validate_system(const PlateSystem& s) {
  if (!(s.d > 0.0) || !std::isfinite(s.d)) throw std::invalid_argument("gap d must be positive");
  if (!(s.T > 0.0) || !std::isfinite(s.T))
    throw std::invalid_argument("Matsubara sum needs T > 0; use pressure_t0 for T = 0");
}

// k_B T prefactors in the y variable.
double pressure_prefactor(const PlateSystem& s) { return -k_B * s.T / (8.0 * pi * s.d * s.d * s.d); }
double free_energy_prefactor(const PlateSystem& s) { return k_B * s.T / (8.0 * pi * s.d * s.d); }

struct TermValue {
  double te;
  double tm;
  double error;  // absolute, same units
};

TermValue integrate_term(const PlateSystem& s, std::size_t n, Quantity quantity, const SumConfig& cfg) {
  const double prefactor = quantity == Quantity::Pressure ? pressure_prefactor(s) : free_energy_prefactor(s);
  const double weight = n == 0 ? 0.5 : 1.0;
  TermValue out{0.0, 0.0, 0.0};
  for (Mode mode : {Mode::TE, Mode::TM}) {
    const LifshitzIntegrand f(s, n, mode, quantity);
    QuadResult q;
    try {
      q = integrate_decaying(std::cref(f), f.lower_limit(), cfg.quad);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("Matsubara term n=" + std::to_string(n) + ": " + e.what(),
                             weight * prefactor * e.best_value(),
                             weight * std::abs(prefactor) * e.error_estimate());
    }
    const double value = weight * prefactor * q.value;
    (mode == Mode::TE ? out.te : out.tm) = value;
    out.error += weight * std::abs(prefactor) * q.error_estimate;
  }
  return out;
}

struct SumOutcome {
  std::vector<TermEntry> terms;
  double total = 0.0;
  double quad_error = 0.0;
  double tail_estimate = 0.0;
  bool converged = false;
};

// Ascending-n Matsubara sum with the two-consecutive-small-terms stopping rule.
SumOutcome matsubara_sum(const PlateSystem& s, Quantity quantity, const SumConfig& cfg) {
  SumOutcome out;
  double partial = 0.0;
  int quiet = 0;
  for (std::size_t n = 0; n < cfg.max_terms; ++n) {
    const TermValue t = integrate_term(s, n, quantity, cfg);
    out.terms.push_back(TermEntry{n, matsubara_xi(n, s.T), t.te, t.tm});
    out.quad_error += t.error;
    const double term = t.te + t.tm;
    partial += term;
    if (n == 0) continue;
    quiet = std::abs(term) <= cfg.term_rel_tol * std::abs(partial) ? quiet + 1 : 0;
    if (quiet >= 2) {
      out.converged = true;
      break;
    }
  }
  for (const auto& e : out.terms) out.total += e.te + e.tm;

  // Geometric extrapolation of the omitted tail from the last three term ratios.
  const auto& tm = out.terms;
  if (tm.size() >= 4) {
    double ratio = 0.0;
    int used = 0;
    for (std::size_t k = tm.size() - 3; k < tm.size(); ++k) {
      const double prev = std::abs(tm[k - 1].te + tm[k - 1].tm);
      const double cur = std::abs(tm[k].te + tm[k].tm);
      if (prev > 0.0) {
        ratio += cur / prev;
        ++used;
      }
    }
    const double last = std::abs(tm.back().te + tm.back().tm);
    if (used > 0) {
      ratio /= used;
      out.tail_estimate = ratio < 1.0 ? last * ratio / (1.0 - ratio)
                                      : last * static_cast<double>(tm.size());
    }
  }
  return out;
}

double relative(double err, double value) { return value != 0.0 ? err / std::abs(value) : 0.0; }

}  // namespace

void SumConfig::validate() const {
  if (!(term_rel_tol > 0.0 && term_rel_tol <= 1e-4))
    throw std::invalid_argument("term_rel_tol must be in (0, 1e-4]");
  if (max_terms < 10) throw std::invalid_argument("max_terms must be >= 10");
  quad.validate();
}

double matsubara_xi(std::size_t n, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("Matsubara frequencies need T > 0");
  return 2.0 * pi * static_cast<double>(n) * k_B * T / hbar;
}

double ideal_pressure_t0(double d) { return -pi * pi * hbar * c / (240.0 * d * d * d * d); }

LifshitzIntegrand::LifshitzIntegrand(const PlateSystem& system, std::size_t n, Mode mode,
                                     Quantity quantity)
    : system_(&system),
      n_(n),
      mode_(mode),
      quantity_(quantity),
      xi_(n == 0 ? 0.0 : matsubara_xi(n, system.T)),
      y_min_(2.0 * system.d * xi_ / c) {}

double LifshitzIntegrand::reflectivity(double y) const {
  const double kappa0 = y / (2.0 * system_->d);
  if (n_ == 0) return r2_zero_frequency(mode_, kappa0, system_->model, system_->prescription);
  const double r = reflection_from_kappa(mode_, kappa0, xi_, system_->model);
  return r * r;
}

double LifshitzIntegrand::operator()(double y) const {
  const double r2 = reflectivity(y);
  if (r2 == 0.0) return 0.0;
  const double decay = std::exp(-y);
  const double x = r2 * decay;
  // 1 - r^2 e^-y without cancellation when r^2 -> 1 and y -> 0.
  const double gap = (1.0 - r2) - r2 * std::expm1(-y);
  if (quantity_ == Quantity::Pressure) return y * y * x / gap;
  return y * (x < 0.5 ? std::log1p(-x) : std::log(gap));
}

TermContribution term_integrals(const PlateSystem& system, std::size_t n, const SumConfig& cfg) {
  if (n == 0) throw std::invalid_argument("term_integrals covers n >= 1; use zero_term");
  validate_system(system);
  cfg.validate();
  const TermValue t = integrate_term(system, n, Quantity::Pressure, cfg);
  return {t.te, t.tm};
}

TermContribution zero_term(const PlateSystem& system, const SumConfig& cfg) {
  validate_system(system);
  cfg.validate();
  const TermValue t = integrate_term(system, 0, Quantity::Pressure, cfg);
  return {t.te, t.tm};
}

ForceResult pressure(const PlateSystem& system, const SumConfig& cfg) {
  validate_system(system);
  cfg.validate();

  ForceResult result;
  const SumOutcome p = matsubara_sum(system, Quantity::Pressure, cfg);
  result.pressure = p.total;
  result.eta = p.total / ideal_pressure_t0(system.d);
  result.terms = p.terms;
  result.n_used = p.terms.size();
  result.est_rel_err = relative(p.quad_error + p.tail_estimate, p.total);
  if (!p.converged) {
    throw TruncationError("pressure Matsubara sum not converged after " +
                              std::to_string(cfg.max_terms) + " terms",
                          std::move(result));
  }

  const SumOutcome f = matsubara_sum(system, Quantity::FreeEnergy, cfg);
  result.free_energy_area = f.total;
  result.est_rel_err = std::max(result.est_rel_err, relative(f.quad_error + f.tail_estimate, f.total));
  if (!f.converged) {
    throw TruncationError("free-energy Matsubara sum not converged after " +
                              std::to_string(cfg.max_terms) + " terms",
                          std::move(result));
  }
  return result;
}

double free_energy(const PlateSystem& system, const SumConfig& cfg) {
  validate_system(system);
  cfg.validate();
  const SumOutcome f = matsubara_sum(system, Quantity::FreeEnergy, cfg);
  if (!f.converged) {
    ForceResult partial;
    partial.free_energy_area = f.total;
    partial.terms = f.terms;
    partial.n_used = f.terms.size();
    throw TruncationError("free-energy Matsubara sum not converged after " +
                              std::to_string(cfg.max_terms) + " terms",
                          std::move(partial));
  }
  return f.total;
}

double pressure_t0(double d, const DielectricModel& model, const SumConfig& cfg) {
  if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("gap d must be positive");
  cfg.validate();

  // k_B T sum_n -> (hbar / 2 pi) int dxi, and xi = c t / (2 d) maps the frequency onto the
  // integrand's lower limit t, giving P0 = -(hbar c / (32 pi^2 d^4)) int_0^inf I(t) dt.
  QuadSpec inner = cfg.quad;
  inner.rel_tol = std::max(cfg.quad.rel_tol * 1e-2, 1e-13);

  auto per_frequency = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double xi = c * t / (2.0 * d);
    double sum = 0.0;
    for (Mode mode : {Mode::TE, Mode::TM}) {
      auto f = [&](double y) {
        const double kappa0 = y / (2.0 * d);
        const double r = reflection_from_kappa(mode, kappa0, xi, model);
        const double r2 = r * r;
        if (r2 == 0.0) return 0.0;
        const double x = r2 * std::exp(-y);
        return y * y * x / ((1.0 - r2) - r2 * std::expm1(-y));
      };
      sum += integrate_decaying(f, t, inner).value;
    }
    return sum;
  };
  const QuadResult outer = integrate_decaying(per_frequency, 0.0, cfg.quad);
  return -hbar * c / (32.0 * pi * pi * d * d * d * d) * outer.value;
}

PfaResult pfa_sphere_plate(double radius, const PlateSystem& system, const SumConfig& cfg) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("sphere radius must be positive");
  const double f = free_energy(system, cfg);
  return PfaResult{2.0 * pi * radius * f, radius >= 100.0 * system.d};
}

}  // namespace casimir
