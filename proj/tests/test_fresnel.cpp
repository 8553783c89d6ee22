#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "casimir/constants.hpp"
#include "casimir/fresnel.hpp"

using namespace casimir;
using constants::c;

namespace {
const double gold_wp = constants::ev_to_rad_per_s(9.0);
const double gold_gd = constants::ev_to_rad_per_s(0.035);
}  // namespace

TEST_CASE("evanescent wave number") {
  CHECK(gamma(3.0, 0.0, Permittivity(50.0)) == 3.0);
  CHECK(gamma(0.0, 2.0 * c, Permittivity(4.0)) == doctest::Approx(4.0));
  CHECK(gamma(3.0, 4.0 * c, Permittivity(1.0)) == doctest::Approx(5.0));
  CHECK(std::isinf(gamma(3.0, 1.0, Permittivity::infinite())));
  CHECK(gamma(3.0, 1e10, Permittivity(2.0)) >= 3.0);
}

TEST_CASE("gamma ratio in the Lifshitz variable") {
  const auto vac = DielectricModel::vacuum();
  for (double p : {1.0, 1.5, 7.0, 1e3}) CHECK(gamma_ratio(p, 1e14, vac) == doctest::Approx(1.0));
  // plasma omega_p = 2 at xi = 1 gives eps = 5; omega_p = sqrt(3) gives eps = 4
  CHECK(gamma_ratio(2.0, 1.0, DielectricModel::plasma(2.0)) == doctest::Approx(std::sqrt(8.0) / 2.0));
  CHECK(gamma_ratio(1.0, 1.0, DielectricModel::plasma(std::sqrt(3.0))) == doctest::Approx(2.0));
  CHECK(std::isinf(gamma_ratio(2.0, 0.0, DielectricModel::drude(gold_wp, gold_gd))));
  CHECK(std::isinf(gamma_ratio(2.0, 0.0, DielectricModel::ideal_metal())));
  CHECK_THROWS_AS(gamma_ratio(0.5, 1.0, vac), std::invalid_argument);
}

TEST_CASE("gamma ratio equals the direct ratio of wave numbers") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logxi(10.0, 17.0), logp(0.0, 3.0);
  const auto drude = DielectricModel::drude(gold_wp, gold_gd);
  for (int k = 0; k < 500; ++k) {
    const double xi = std::pow(10.0, logxi(rng));
    const double p = std::pow(10.0, logp(rng));
    const double q = xi * std::sqrt(p * p - 1.0) / c;
    const double direct = gamma(q, xi, eval_eps(drude, xi)) / gamma(q, xi, Permittivity(1.0));
    CHECK(std::abs(gamma_ratio(p, xi, drude) - direct) / direct < 1e-12);
  }
}

TEST_CASE("reflection amplitudes") {
  // gamma0 = 1, gamma1 = 3 -> r_TE = -1/2: q = 1 at xi with eps chosen so gamma1 = 3
  {
    const double xi = 1e8;  // xi/c ~ 0.33 rad/m
    const double k0 = std::hypot(1.0, xi / c);
    // gamma1^2 - gamma0^2 = 9 k0^2 - k0^2 = xi^2 (eps - 1) / c^2
    const double eps = 1.0 + 8.0 * k0 * k0 * c * c / (xi * xi);
    const double wp = xi * std::sqrt(eps - 1.0);
    CHECK(reflection_from_kappa(Mode::TE, k0, xi, DielectricModel::plasma(wp)) == doctest::Approx(-0.5));
  }
  const auto vac = DielectricModel::vacuum();
  CHECK(r_mode(Mode::TE, 1e6, 1e14, vac) == 0.0);
  CHECK(r_mode(Mode::TM, 1e6, 1e14, vac) == 0.0);
  CHECK(r_mode(Mode::TE, 1e6, 1e14, DielectricModel::ideal_metal()) == -1.0);
  CHECK(r_mode(Mode::TM, 1e6, 1e14, DielectricModel::ideal_metal()) == 1.0);
  CHECK_THROWS_AS(r_mode(Mode::TE, 0.0, 0.0, vac), std::invalid_argument);
}

TEST_CASE("TM matches the textbook form where it is well conditioned") {
  const auto drude = DielectricModel::drude(gold_wp, gold_gd);
  for (double xi : {1e13, 1e14, 1e15, 1e16}) {
    for (double q : {1e5, 1e6, 1e7, 1e8}) {
      const double eps = eval_eps(drude, xi).value();
      const double g0 = gamma(q, xi, Permittivity(1.0));
      const double g1 = gamma(q, xi, Permittivity(eps));
      CHECK(r_mode(Mode::TM, q, xi, drude) == doctest::Approx((eps * g0 - g1) / (eps * g0 + g1)).epsilon(1e-12));
      CHECK(r_mode(Mode::TE, q, xi, drude) == doctest::Approx((g0 - g1) / (g0 + g1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("reflectivities lie in [0, 1] with the documented signs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logq(2.0, 9.0), logxi(8.0, 17.0), logwp(14.0, 17.0), u(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const double wp = std::pow(10.0, logwp(rng));
    DielectricModel model = DielectricModel::vacuum();
    switch (k % 4) {
      case 0: model = DielectricModel::plasma(wp); break;
      case 1: model = DielectricModel::drude(wp, wp * u(rng) * 0.1); break;
      case 2: model = DielectricModel::ideal_metal(); break;
      default: model = DielectricModel::drude(wp, 0.0); break;
    }
    const double q = std::pow(10.0, logq(rng));
    const double xi = k % 7 == 0 ? 0.0 : std::pow(10.0, logxi(rng));
    const double te = r_mode(Mode::TE, q, xi, model);
    const double tm = r_mode(Mode::TM, q, xi, model);
    CHECK(te <= 0.0);
    CHECK(te >= -1.0);
    CHECK(tm >= 0.0);
    CHECK(tm <= 1.0);
  }
}

TEST_CASE("zero-frequency reflectivity under each prescription") {
  const auto drude = DielectricModel::drude(gold_wp, gold_gd);
  for (double q : {1e3, 1e6, 1e9}) {
    CHECK(r2_zero_frequency(Mode::TE, q, drude, Prescription::PointwiseLimit) == 0.0);
    CHECK(r2_zero_frequency(Mode::TE, q, drude, Prescription::IdealTEZero) == 1.0);
    CHECK(r2_zero_frequency(Mode::TM, q, drude, Prescription::PointwiseLimit) == 1.0);
    CHECK(r2_zero_frequency(Mode::TM, q, drude, Prescription::IdealTEZero) == 1.0);
    CHECK(r2_zero_frequency(Mode::TE, q, DielectricModel::ideal_metal(), Prescription::PointwiseLimit) == 1.0);
    CHECK(r2_zero_frequency(Mode::TE, q, DielectricModel::vacuum(), Prescription::IdealTEZero) == 0.0);
  }
  // omega_p / c = 4, q = 3: ((3 - 5) / (3 + 5))^2
  const auto plasma = DielectricModel::plasma(4.0 * c);
  CHECK(r2_zero_frequency(Mode::TE, 3.0, plasma, Prescription::PointwiseLimit) == doctest::Approx(0.0625));
  CHECK(r2_zero_frequency(Mode::TE, 3.0, plasma, Prescription::IdealTEZero) == 1.0);
  CHECK_THROWS_AS(r2_zero_frequency(Mode::TE, 0.0, plasma, Prescription::IdealTEZero), std::invalid_argument);
}

TEST_CASE("drude TE vanishes pointwise at fixed q") {
  const auto drude = DielectricModel::drude(gold_wp, gold_gd);
  const double q = 1e6;
  double previous = 1.0;
  for (double xi = 1e12; xi > 1e2; xi /= 10.0) {
    const double r = r_mode(Mode::TE, q, xi, drude);
    CHECK(r * r < previous);
    previous = r * r;
  }
  CHECK(previous < 1e-12);
}

TEST_CASE("path dependence: fixed q falls to 0, fixed p rises to 1") {
  const auto drude = DielectricModel::drude(gold_wp, gold_gd);
  const double q = 10.0 * gold_wp / c;  // gamma0 ~ q over the whole ladder
  const double p = 2.0;
  double fixed_q_prev = INFINITY;
  double fixed_p_prev = -INFINITY;
  for (int k = 1; k <= 12; ++k) {
    const double xi = std::pow(10.0, -k) * gold_wp;
    const double rq = r_mode(Mode::TE, q, xi, drude);
    const double rp = r_mode(Mode::TE, xi * std::sqrt(p * p - 1.0) / c, xi, drude);
    CHECK(rq * rq < fixed_q_prev);
    CHECK(rp * rp > fixed_p_prev);
    fixed_q_prev = rq * rq;
    fixed_p_prev = rp * rp;
  }
  CHECK(fixed_q_prev < 1e-10);
  CHECK(1.0 - fixed_p_prev < 1e-4);
}

TEST_CASE("plasma approaches the ideal metal as omega_p grows") {
  const double q = 1e6, xi = 1e13;
  for (Mode mode : {Mode::TE, Mode::TM}) {
    double previous = 1.0;
    for (double factor = 1e3; factor <= 1e6; factor *= 10.0) {
      const double r = r_mode(mode, q, xi, DielectricModel::plasma(factor * xi));
      const double gap = 1.0 - r * r;
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 1e-3);
  }
}
