#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace casimir {

/// A non-negative real quantity that may be exactly infinite. IdealMetal
/// permittivity and the divergent zero-frequency limits use the infinite state.
class Extended {
 public:
  constexpr explicit Extended(double value) : value_(value) {}
  static constexpr Extended infinite() { return Extended(std::numeric_limits<double>::infinity()); }

  constexpr bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  /// Finite value, or +inf.
  constexpr double value() const { return value_; }

  friend constexpr bool operator==(Extended, Extended) = default;

 private:
  double value_;
};

using Permittivity = Extended;

namespace material {

struct IdealMetal {};

/// eps == 1 at every frequency; the no-interface reference.
struct Vacuum {};

struct Plasma {
  double omega_p;  // rad/s
};

struct Drude {
  double omega_p;  // rad/s
  double gamma_d;  // rad/s, relaxation frequency
};

struct TablePoint {
  double xi;   // rad/s
  double eps;
};

/// Log-log interpolated eps(i xi). Below the first point eps = A/xi + B, fitted
/// through the two lowest points; above the last point eps = 1.
struct Tabulated {
  std::vector<TablePoint> points;
  double low_slope;      // A
  double low_intercept;  // B
};

}  // namespace material

/// Permittivity on the imaginary frequency axis of one plate material.
class DielectricModel {
 public:
  using Variant = std::variant<material::IdealMetal, material::Vacuum, material::Plasma,
                               material::Drude, material::Tabulated>;

  static DielectricModel ideal_metal();
  static DielectricModel vacuum();
  /// Throws std::invalid_argument unless omega_p > 0.
  static DielectricModel plasma(double omega_p);
  /// Throws std::invalid_argument unless omega_p > 0 and gamma_d >= 0.
  static DielectricModel drude(double omega_p, double gamma_d);
  /// Validates ordering and eps >= 1; throws FormatError (line 0) on violation.
  static DielectricModel tabulated(std::vector<material::TablePoint> points);

  const Variant& variant() const { return model_; }
  template <class T>
  bool is() const { return std::holds_alternative<T>(model_); }

  /// True when eps(i xi) diverges as xi -> 0, i.e. the material screens static fields.
  bool is_conducting() const;

  /// Short tag: "ideal", "vacuum", "plasma", "drude" or "table".
  std::string_view name() const;

 private:
  explicit DielectricModel(Variant v) : model_(std::move(v)) {}
  Variant model_;
};

/// eps(i xi). Infinite for IdealMetal, and for conducting models at xi == 0.
/// Throws ExtrapolationError for a Tabulated model with non-positive low-end
/// slope queried below its first point.
Permittivity eval_eps(const DielectricModel& model, double xi);

/// xi^2 eps(i xi) in (rad/s)^2, continuous at xi == 0 where eval_eps is not.
Extended eval_xi2_eps(const DielectricModel& model, double xi);

/// Parse "xi eps" lines ('#' comments, blank lines ignored). Needs at least two
/// data points; throws FormatError naming the offending line.
DielectricModel load_tabulated(std::istream& source);

}  // namespace casimir
