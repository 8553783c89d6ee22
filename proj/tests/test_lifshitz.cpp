#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/lifshitz.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {

const DielectricModel gold = DielectricModel::drude(constants::ev_to_rad_per_s(9.0), constants::ev_to_rad_per_s(0.035));

// int_a^inf y^2 e^-y / (1 - e^-y) dy = sum_j e^{-ja} (a^2/j + 2a/j^2 + 2/j^3)
double bose_tail(double a) {
  double sum = 0.0;
  for (int j = 1; j < 200000; ++j) {
    const double jj = j;
    const double term = std::exp(-jj * a) * (a * a / jj + 2.0 * a / (jj * jj) + 2.0 / (jj * jj * jj));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

PlateSystem plates(double d, double T, const DielectricModel& m, Prescription p = Prescription::PointwiseLimit) {
  return PlateSystem{d, T, m, p};
}

}  // namespace

TEST_CASE("matsubara frequencies") {
  CHECK(matsubara_xi(0, 300.0) == 0.0);
  CHECK(matsubara_xi(1, 300.0) == doctest::Approx(oracle::matsubara_xi(1, 300.0)).epsilon(1e-14));
  CHECK(matsubara_xi(1, 300.0) == doctest::Approx(2.46779025515e14).epsilon(1e-11));
  CHECK(matsubara_xi(2, 150.0) == doctest::Approx(matsubara_xi(1, 300.0)).epsilon(1e-15));
  CHECK_THROWS_AS(matsubara_xi(1, 0.0), std::invalid_argument);
}

TEST_CASE("per-term integrals for the ideal metal and vacuum") {
  const SumConfig cfg;
  for (double d : {0.2e-6, 1e-6, 4e-6}) {
    for (std::size_t n : {1u, 2u, 7u}) {
      const auto sys = plates(d, 300.0, DielectricModel::ideal_metal());
      const auto t = term_integrals(sys, n, cfg);
      const double yn = 2.0 * d * oracle::matsubara_xi(static_cast<int>(n), 300.0) / oracle::c;
      const double expected = -oracle::k_B * 300.0 / (8.0 * oracle::pi * d * d * d) * bose_tail(yn);
      CHECK(t.te == doctest::Approx(expected).epsilon(1e-8));
      CHECK(t.tm == t.te);
      const auto v = term_integrals(plates(d, 300.0, DielectricModel::vacuum()), n, cfg);
      CHECK(v.te == 0.0);
      CHECK(v.tm == 0.0);
    }
  }
  CHECK_THROWS_AS(term_integrals(plates(1e-6, 300.0, gold), 0, cfg), std::invalid_argument);
}

TEST_CASE("drude term: TE weaker than TM, bounded by ideal, matches dense grid") {
  const SumConfig cfg;
  const auto sys = plates(1e-6, 300.0, gold);
  const auto t = term_integrals(sys, 1, cfg);
  CHECK(t.te < 0.0);
  CHECK(t.tm < 0.0);
  CHECK(std::abs(t.te) < std::abs(t.tm));
  const auto ideal = term_integrals(plates(1e-6, 300.0, DielectricModel::ideal_metal()), 1, cfg);
  CHECK(std::abs(t.tm) <= std::abs(ideal.tm));

  for (Mode mode : {Mode::TE, Mode::TM}) {
    const LifshitzIntegrand f(sys, 1, mode, Quantity::Pressure);
    const double a = f.lower_limit();
    const double dense = oracle_trapezoid(std::cref(f), a, a + 200.0, 100000);
    const double prefactor = -oracle::k_B * 300.0 / (8.0 * oracle::pi * 1e-18);
    const double engine = mode == Mode::TE ? t.te : t.tm;
    CHECK(std::abs(prefactor * dense - engine) / std::abs(engine) < 1e-6);
  }
}

TEST_CASE("term magnitudes never exceed the ideal metal") {
  const SumConfig cfg;
  for (const auto& model : {gold, DielectricModel::plasma(constants::ev_to_rad_per_s(9.0))}) {
    for (double d : {0.1e-6, 0.5e-6, 3e-6}) {
      for (std::size_t n = 1; n <= 6; ++n) {
        const auto m = term_integrals(plates(d, 300.0, model), n, cfg);
        const auto ideal = term_integrals(plates(d, 300.0, DielectricModel::ideal_metal()), n, cfg);
        CHECK(m.te <= 0.0);
        CHECK(m.tm <= 0.0);
        CHECK(std::abs(m.te) <= std::abs(ideal.te) * (1.0 + 1e-12));
        CHECK(std::abs(m.tm) <= std::abs(ideal.tm) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("zero-frequency term under each prescription") {
  const SumConfig cfg;
  const double d = 1e-6, T = 300.0;
  const double tm_expected = -oracle::k_B * T / (16.0 * oracle::pi * d * d * d) * 2.0 * oracle::zeta3();

  const auto pw = zero_term(plates(d, T, gold, Prescription::PointwiseLimit), cfg);
  CHECK(pw.te == 0.0);
  CHECK(pw.tm == doctest::Approx(tm_expected).epsilon(1e-8));

  const auto ite = zero_term(plates(d, T, gold, Prescription::IdealTEZero), cfg);
  CHECK(ite.te == doctest::Approx(-oracle::k_B * T * oracle::zeta3() / (8.0 * oracle::pi * d * d * d)).epsilon(1e-8));
  CHECK(ite.tm == doctest::Approx(tm_expected).epsilon(1e-8));

  for (auto p : {Prescription::PointwiseLimit, Prescription::IdealTEZero}) {
    const auto im = zero_term(plates(d, T, DielectricModel::ideal_metal(), p), cfg);
    CHECK(im.te == im.tm);
    CHECK(im.tm == doctest::Approx(tm_expected).epsilon(1e-8));
  }

  const auto plasma = zero_term(plates(d, T, DielectricModel::plasma(constants::ev_to_rad_per_s(9.0))), cfg);
  CHECK(plasma.te < 0.0);
  CHECK(plasma.te > -std::abs(plasma.tm));
  CHECK(plasma.tm == doctest::Approx(tm_expected).epsilon(1e-8));
}

TEST_CASE("pressure analytic limits") {
  const SumConfig cfg;
  const auto cold = pressure(plates(0.5e-6, 1.0, DielectricModel::ideal_metal()), cfg);
  CHECK(oracle::rel_diff(cold.pressure, oracle::ideal_pressure_t0(0.5e-6)) < 5e-3);
  CHECK(cold.pressure == doctest::Approx(-2.0802e-2).epsilon(5e-3));

  const auto hot = pressure(plates(10e-6, 300.0, DielectricModel::ideal_metal()), cfg);
  CHECK(oracle::rel_diff(hot.pressure, oracle::ideal_classical_pressure(10e-6, 300.0)) < 1e-2);
  CHECK(hot.pressure == doctest::Approx(-3.962e-7).epsilon(1e-2));

  const auto pw = pressure(plates(20e-6, 300.0, gold, Prescription::PointwiseLimit), cfg);
  const auto ite = pressure(plates(20e-6, 300.0, gold, Prescription::IdealTEZero), cfg);
  CHECK(std::abs(pw.pressure / ite.pressure - 0.5) < 0.01);
}

TEST_CASE("force result invariants and ledger bookkeeping") {
  const auto r = pressure(plates(0.3e-6, 300.0, gold));
  CHECK(r.pressure < 0.0);
  CHECK(r.free_energy_area < 0.0);
  CHECK(r.eta > 0.0);
  CHECK(std::isfinite(r.eta));
  CHECK(r.n_used == r.terms.size());
  CHECK(r.est_rel_err < 1e-6);
  REQUIRE(r.terms.size() > 3);
  CHECK(r.terms[0].n == 0);
  CHECK(r.terms[0].xi == 0.0);

  double sum = 0.0;
  for (const auto& t : r.terms) sum += t.te + t.tm;
  CHECK(std::abs(sum - r.pressure) <= 1e-12 * std::abs(r.pressure));

  // eventually monotone: the second half of the ledger decreases in magnitude
  for (std::size_t k = r.terms.size() / 2 + 1; k < r.terms.size(); ++k)
    CHECK(std::abs(r.terms[k].te + r.terms[k].tm) < std::abs(r.terms[k - 1].te + r.terms[k - 1].tm));

  const auto vac = pressure(plates(1e-6, 300.0, DielectricModel::vacuum()));
  CHECK(vac.pressure == 0.0);
  CHECK(vac.free_energy_area == 0.0);
}

TEST_CASE("truncation error keeps the partial ledger") {
  SumConfig cfg;
  cfg.max_terms = 10;
  try {
    pressure(plates(0.5e-6, 1.0, DielectricModel::ideal_metal()), cfg);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.partial().terms.size() == 10);
    CHECK(e.partial().pressure < 0.0);
  }
  CHECK_THROWS_AS(pressure(plates(1e-6, 0.0, gold)), std::invalid_argument);
  CHECK_THROWS_AS(pressure(plates(0.0, 300.0, gold)), std::invalid_argument);
}

TEST_CASE("orderings across prescriptions, models and gaps") {
  const SumConfig cfg;
  const double wp = constants::ev_to_rad_per_s(9.0);
  const auto plasma = DielectricModel::plasma(wp);
  double previous = -INFINITY;
  for (double d : {0.1e-6, 0.3e-6, 1e-6, 2.5e-6, 5e-6}) {
    const double pw = pressure(plates(d, 300.0, gold, Prescription::PointwiseLimit), cfg).pressure;
    const double ite = pressure(plates(d, 300.0, gold, Prescription::IdealTEZero), cfg).pressure;
    CHECK(std::abs(ite) > std::abs(pw));

    const double pl = pressure(plates(d, 300.0, plasma), cfg).pressure;
    const double im = pressure(plates(d, 300.0, DielectricModel::ideal_metal()), cfg).pressure;
    CHECK(std::abs(pw) <= std::abs(pl));
    CHECK(std::abs(pl) <= std::abs(im));

    CHECK(pw > previous);  // |P| strictly decreasing in d
    previous = pw;
  }
}

TEST_CASE("free energy limits and thermodynamic consistency") {
  const SumConfig cfg;
  const double f = free_energy(plates(0.5e-6, 1.0, DielectricModel::ideal_metal()), cfg);
  CHECK(oracle::rel_diff(f, oracle::ideal_free_energy_t0(0.5e-6)) < 5e-3);
  CHECK(f == doctest::Approx(-3.467e-9).epsilon(5e-3));
  CHECK(free_energy(plates(1e-6, 300.0, DielectricModel::vacuum()), cfg) == 0.0);

  for (double d : {0.2e-6, 1.3e-6}) {
    const double h = 1e-4 * d;
    auto sys = plates(d, 300.0, gold);
    const double p = pressure(sys, cfg).pressure;
    sys.d = d + h;
    const double fp = free_energy(sys, cfg);
    sys.d = d - h;
    const double fm = free_energy(sys, cfg);
    CHECK(oracle::rel_diff(-(fp - fm) / (2.0 * h), p) < 1e-4);
  }
}

TEST_CASE("zero-temperature integral") {
  const SumConfig cfg;
  const double p = pressure_t0(1e-6, DielectricModel::ideal_metal(), cfg);
  CHECK(oracle::rel_diff(p, oracle::ideal_pressure_t0(1e-6)) < 1e-6);
  CHECK(p == doctest::Approx(-1.3002e-3).epsilon(1e-4));
  CHECK(p / ideal_pressure_t0(1e-6) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(pressure_t0(0.3e-6, DielectricModel::ideal_metal(), cfg) / ideal_pressure_t0(0.3e-6) ==
        doctest::Approx(1.0).epsilon(1e-6));

  const double huge = pressure_t0(1e-6, DielectricModel::plasma(1e20), cfg);
  CHECK(oracle::rel_diff(huge, oracle::ideal_pressure_t0(1e-6)) < 1e-4);

  // drude at T = 0 is weaker than ideal
  const double g = pressure_t0(1e-6, gold, cfg);
  CHECK(g < 0.0);
  CHECK(std::abs(g) < std::abs(p));
}

TEST_CASE("proximity force approximation") {
  const SumConfig cfg;
  const double R = 1e-2, d = 1e-6;
  const auto r = pfa_sphere_plate(R, plates(d, 1.0, DielectricModel::ideal_metal()), cfg);
  const double closed = -std::pow(oracle::pi, 3) * oracle::hbar * oracle::c * R / (360.0 * d * d * d);
  CHECK(oracle::rel_diff(r.force, closed) < 5e-3);
  CHECK(r.pfa_valid);

  const auto sys = plates(2e-6, 300.0, gold);
  const double f1 = pfa_sphere_plate(R, sys, cfg).force;
  const double f2 = pfa_sphere_plate(2.0 * R, sys, cfg).force;
  CHECK(f2 == doctest::Approx(2.0 * f1).epsilon(1e-14));
  CHECK_FALSE(pfa_sphere_plate(10e-6, plates(5e-6, 300.0, gold), cfg).pfa_valid);

  const double pw = pfa_sphere_plate(R, plates(20e-6, 300.0, gold, Prescription::PointwiseLimit), cfg).force;
  const double ite = pfa_sphere_plate(R, plates(20e-6, 300.0, gold, Prescription::IdealTEZero), cfg).force;
  CHECK(pw < 0.0);
  CHECK(std::abs(pw / ite - 0.5) < 0.01);
}
