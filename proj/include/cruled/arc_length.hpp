#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cruled/curve.hpp"

namespace cruled {

struct ArcLengthOptions {
  double quadrature_tol = 1e-10;
  double inversion_tol = 1e-12;
  double min_speed = 1e-8;
};

/// Unit-speed view beta(s) = alpha(t(s)) of a regular curve, s in [0, L].
///
/// s(t) is tabulated by adaptive Gauss-Kronrod subdivision of the speed; the
/// inverse t(s) is found by Newton iteration inside the bracketing panel. Jets
/// of beta come from composing the jets of alpha with the jet of t(s), which
/// is built order by order from t'(s) = 1 / |alpha'(t(s))|.
class ArcLengthCurve final : public CurveEvaluator {
 public:
  /// Throws NonRegularCurve if the speed drops below options.min_speed.
  explicit ArcLengthCurve(std::shared_ptr<const CurveEvaluator> base, ArcLengthOptions options = {});

  VecJet jet(double s, int order) const override;
  Interval domain() const override { return {0.0, total_length()}; }
  std::string name() const override { return base_->name() + " (arc length)"; }

  double total_length() const noexcept { return cumulative_.back(); }
  /// Arc length from the start of the base domain to base parameter t.
  double arc_length_at(double t) const;
  /// Base parameter t with arc_length_at(t) == s; extends past either end
  /// within the evaluation margin.
  double parameter_at(double s) const;

  const CurveEvaluator& base() const noexcept { return *base_; }

 private:
  double speed(double t) const;
  double extrapolated_parameter(double s) const;
  double partial(std::size_t panel, double t) const;

  std::shared_ptr<const CurveEvaluator> base_;
  ArcLengthOptions options_;
  std::vector<double> breaks_;      // panel boundaries in t
  std::vector<double> cumulative_;  // arc length at each boundary
};

/// Arc-length view of `def`; `tol` bounds the quadrature error relative to
/// the total length. Throws NonRegularCurve.
std::shared_ptr<const ArcLengthCurve> arc_length_reparameterize(const CurveDef& def, double tol = 1e-10);

/// The curve every downstream module consumes: either the input curve itself
/// (already unit speed) or its arc-length reparameterization.
struct UnitSpeedCurve {
  std::shared_ptr<const CurveEvaluator> curve;
  bool reparameterized = false;
  double input_max_deviation = 0.0;
};

/// Checks the input speed at 256 samples. Curves within `tol` of unit speed
/// pass through unchanged; others are reparameterized, unless the definition
/// asserts unit speed, in which case NotUnitSpeed is thrown.
UnitSpeedCurve prepare_unit_speed(const CurveDef& def, double tol = 1e-10,
                                  ArcLengthOptions options = {});

}  // namespace cruled
