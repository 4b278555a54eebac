#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "cruled/expression.hpp"
#include "cruled/jet.hpp"

namespace cruled {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  /// Membership with a relative slack of 1e-12 at both ends.
  bool contains(double x) const noexcept;
  /// Membership in the domain widened by its evaluation margin.
  bool contains_extended(double x) const noexcept;
  /// max(1% of the length, 0.01): room for finite-difference stencils at the ends.
  double evaluation_margin() const noexcept;
};

/// A space curve given by three expressions in `s` over a closed domain.
struct CurveDef {
  std::string name;
  std::array<Expression, 3> components;
  Interval domain;
  bool assume_unit_speed = false;
};

/// Builds and validates a CurveDef: nonempty domain and every component
/// finite at 64 equispaced samples.
CurveDef make_curve_def(std::string name, const std::array<std::string, 3>& components,
                        Interval domain, bool assume_unit_speed);

/// Parses a curve-spec JSON document:
/// {"name": ..., "components": [e, e, e], "domain": [s0, s1], "assume_unit_speed": bool}.
/// Domain bounds may be numbers or constant expressions such as "4*pi".
CurveDef parse_curve_spec(std::string_view document);

/// Position and derivatives of the curve, entry k of each component being
/// the k-th derivative. Throws OutOfDomain or EvaluationSingularity.
VecJet eval_jet(const CurveDef& curve, double s, int order);
/// Same as eval_jet but accepts s within the evaluation margin outside the domain.
VecJet eval_jet_extended(const CurveDef& curve, double s, int order);

/// Anything that yields a vector jet over a parameter interval: expression
/// curves, arc-length reparameterizations, ruling fields. jet() accepts
/// parameters up to the domain's evaluation margin beyond either end.
class CurveEvaluator {
 public:
  virtual ~CurveEvaluator() = default;

  virtual VecJet jet(double s, int order) const = 0;
  virtual Interval domain() const = 0;
  virtual std::string name() const = 0;

  Vec3 point(double s) const { return jet(s, 0).value(); }
};

class ExpressionCurve final : public CurveEvaluator {
 public:
  explicit ExpressionCurve(CurveDef def) : def_(std::move(def)) {}

  VecJet jet(double s, int order) const override { return eval_jet_extended(def_, s, order); }
  Interval domain() const override { return def_.domain; }
  std::string name() const override { return def_.name; }

  const CurveDef& definition() const noexcept { return def_; }

 private:
  CurveDef def_;
};

struct SpeedCheck {
  bool unit_speed = false;
  double max_deviation = 0.0;
};

/// Max over `samples` equispaced points of | |a'(s)| - 1 |.
SpeedCheck unit_speed_check(const CurveEvaluator& curve, int samples, double tol);
SpeedCheck unit_speed_check(const CurveDef& curve, int samples, double tol);

}  // namespace cruled
