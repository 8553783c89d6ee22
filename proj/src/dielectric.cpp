#include "casimir/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "casimir/error.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double tabulated_eps(const material::Tabulated& table, double xi) {
  const auto& pts = table.points;
  if (xi > pts.back().xi) return 1.0;
  if (xi < pts.front().xi) {
    if (!(table.low_slope > 0.0)) {
      throw ExtrapolationError(
          "tabulated permittivity does not rise toward low frequency; cannot extrapolate below "
          "xi = " + std::to_string(pts.front().xi) + " rad/s");
    }
    return table.low_slope / xi + table.low_intercept;
  }
  auto hi = std::upper_bound(pts.begin(), pts.end(), xi,
                             [](double x, const material::TablePoint& p) { return x < p.xi; });
  if (hi == pts.end()) return pts.back().eps;
  auto lo = hi - 1;
  const double t = std::log(xi / lo->xi) / std::log(hi->xi / lo->xi);
  return std::exp(std::log(lo->eps) + t * std::log(hi->eps / lo->eps));
}

}  // namespace

DielectricModel DielectricModel::ideal_metal() { return DielectricModel(material::IdealMetal{}); }

DielectricModel DielectricModel::vacuum() { return DielectricModel(material::Vacuum{}); }

DielectricModel DielectricModel::plasma(double omega_p) {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p))
    throw std::invalid_argument("plasma frequency must be positive and finite");
  return DielectricModel(material::Plasma{omega_p});
}

DielectricModel DielectricModel::drude(double omega_p, double gamma_d) {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p))
    throw std::invalid_argument("plasma frequency must be positive and finite");
  if (!(gamma_d >= 0.0) || !std::isfinite(gamma_d))
    throw std::invalid_argument("relaxation frequency must be non-negative and finite");
  return DielectricModel(material::Drude{omega_p, gamma_d});
}

DielectricModel DielectricModel::tabulated(std::vector<material::TablePoint> points) {
  if (points.size() < 2) throw FormatError("dielectric table needs at least two data points", 0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!(points[k].xi > 0.0)) throw FormatError("frequency must be positive", 0);
    if (!(points[k].eps >= 1.0)) throw FormatError("permittivity must be >= 1", 0);
    if (k > 0 && !(points[k].xi > points[k - 1].xi))
      throw FormatError("frequencies must be strictly increasing", 0);
  }
  const auto& p0 = points[0];
  const auto& p1 = points[1];
  const double slope = (p0.eps - p1.eps) / (1.0 / p0.xi - 1.0 / p1.xi);
  const double intercept = p0.eps - slope / p0.xi;
  return DielectricModel(material::Tabulated{std::move(points), slope, intercept});
}

bool DielectricModel::is_conducting() const {
  return std::visit(Overloaded{
                        [](const material::Vacuum&) { return false; },
                        [](const material::Tabulated& t) { return t.low_slope > 0.0; },
                        [](const auto&) { return true; },
                    },
                    model_);
}

std::string_view DielectricModel::name() const {
  return std::visit(Overloaded{
                        [](const material::IdealMetal&) { return std::string_view("ideal"); },
                        [](const material::Vacuum&) { return std::string_view("vacuum"); },
                        [](const material::Plasma&) { return std::string_view("plasma"); },
                        [](const material::Drude&) { return std::string_view("drude"); },
                        [](const material::Tabulated&) { return std::string_view("table"); },
                    },
                    model_);
}

Permittivity eval_eps(const DielectricModel& model, double xi) {
  if (!(xi >= 0.0)) throw std::invalid_argument("frequency must be non-negative");
  return std::visit(
      Overloaded{
          [](const material::IdealMetal&) { return Permittivity::infinite(); },
          [](const material::Vacuum&) { return Permittivity(1.0); },
          [xi](const material::Plasma& m) {
            if (xi == 0.0) return Permittivity::infinite();
            return Permittivity(1.0 + m.omega_p * m.omega_p / (xi * xi));
          },
          [xi](const material::Drude& m) {
            if (xi == 0.0) return Permittivity::infinite();
            return Permittivity(1.0 + m.omega_p * m.omega_p / (xi * (xi + m.gamma_d)));
          },
          [xi](const material::Tabulated& t) {
            if (xi == 0.0) {
              if (t.low_slope > 0.0) return Permittivity::infinite();
              tabulated_eps(t, xi);  // throws
            }
            return Permittivity(tabulated_eps(t, xi));
          },
      },
      model.variant());
}

Extended eval_xi2_eps(const DielectricModel& model, double xi) {
  if (!(xi >= 0.0)) throw std::invalid_argument("frequency must be non-negative");
  if (model.is<material::IdealMetal>()) return Extended::infinite();
  if (xi > 0.0) {
    const Permittivity eps = eval_eps(model, xi);
    if (!eps.is_infinite()) return Extended(xi * xi * eps.value());
    // eps overflowed at extremely small xi; fall through to the product forms.
  }
  return std::visit(
      Overloaded{
          [](const material::IdealMetal&) { return Extended::infinite(); },
          [xi](const material::Vacuum&) { return Extended(xi * xi); },
          [xi](const material::Plasma& m) { return Extended(xi * xi + m.omega_p * m.omega_p); },
          [xi](const material::Drude& m) {
            const double wp2 = m.omega_p * m.omega_p;
            if (m.gamma_d == 0.0) return Extended(xi * xi + wp2);
            return Extended(xi * xi + xi * wp2 / (xi + m.gamma_d));
          },
          [xi](const material::Tabulated& t) {
            if (!(t.low_slope > 0.0)) tabulated_eps(t, 0.0);  // throws
            return Extended(t.low_slope * xi + t.low_intercept * xi * xi);
          },
      },
      model.variant());
}

DielectricModel load_tabulated(std::istream& source) {
  std::vector<material::TablePoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::istringstream fields(line);
    material::TablePoint p{};
    std::string extra;
    if (!(fields >> p.xi >> p.eps) || (fields >> extra))
      throw FormatError("expected two numbers \"xi eps\"", line_no);
    if (!(p.xi > 0.0) || !std::isfinite(p.xi)) throw FormatError("frequency must be positive", line_no);
    if (!(p.eps >= 1.0) || !std::isfinite(p.eps)) throw FormatError("permittivity must be >= 1", line_no);
    if (!points.empty() && !(p.xi > points.back().xi))
      throw FormatError("frequencies must be strictly increasing", line_no);
    points.push_back(p);
  }
  if (points.size() < 2)
    throw FormatError("dielectric table needs at least two data points, found " +
                          std::to_string(points.size()),
                      0);
  return DielectricModel::tabulated(std::move(points));
}

}  // namespace casimir
