#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cruled/arc_length.hpp"
#include "cruled/frame.hpp"
#include "cruled/ruled_oracle.hpp"

namespace cruled {

/// Neighbourhoods with |kappa| below this are excised from sampling grids.
inline constexpr double kTrimKappa = 1e-6;
inline constexpr double kTrimMargin = 1e-3;
/// Points with D = v^2 f^2 + (sin(theta) + v g)^2 below this are singular.
inline constexpr double kSingularD = 1e-12;

struct TrimRecord {
  Interval excised;
  std::string reason;
};

/// Ruled surface phi(s, v) = alpha(s) + v C(s) swept by the C vector of the
/// alternative frame of a unit-speed base curve.
///
/// Pointwise evaluation accepts any s in the base domain where the frame
/// exists. The active intervals (base domain minus excised curvature-zero
/// neighbourhoods) are what sampling grids should use.
class CSurface {
 public:
  /// Throws DegenerateBaseCurve when the frame is undefined or the curvature
  /// is below kTrimKappa across the whole domain.
  CSurface(UnitSpeedCurve base, NormalConvention convention, Interval v_range);

  const CurveEvaluator& base() const noexcept { return *base_.curve; }
  std::shared_ptr<const CurveEvaluator> base_ptr() const noexcept { return base_.curve; }
  bool reparameterized() const noexcept { return base_.reparameterized; }
  double input_speed_deviation() const noexcept { return base_.input_max_deviation; }
  NormalConvention convention() const noexcept { return convention_; }
  Interval s_domain() const { return base_.curve->domain(); }
  Interval v_domain() const noexcept { return v_range_; }

  const std::vector<Interval>& active_intervals() const noexcept { return active_; }
  const std::vector<TrimRecord>& trim_log() const noexcept { return trim_log_; }
  bool is_active(double s) const;

  AltFrameJets frame_jets(double s) const;
  AltApparatus apparatus(double s) const;
  /// C(s) alone; needs only a third-order jet.
  Vec3 ruling(double s) const;
  Vec3 point(double s, double v) const;

  /// The same surface as a generic ruled surface (ruling = C with jets of
  /// order 2) for the oracle formulas.
  RuledSurfaceDef as_ruled_surface() const;
  SurfaceFn surface_fn() const;

 private:
  std::optional<Vec3> reference(double s) const;

  UnitSpeedCurve base_;
  NormalConvention convention_;
  Interval v_range_;
  std::shared_ptr<const FrameSweep> sweep_;
  std::vector<Interval> active_;
  std::vector<TrimRecord> trim_log_;
};

CSurface make_c_surface(const CurveDef& curve, NormalConvention convention, Interval v_range = {-1.0, 1.0});

/// alpha(s) + v C(s). Throws OutOfDomain.
Vec3 eval_point(const CSurface& surface, double s, double v);

struct StrictionLinePoint {
  Vec3 point;
  double v_star = 0.0;
};

/// v* = -g sin(theta) / (f^2 + g^2). Throws SingularPoint when f^2 + g^2 < 1e-12.
StrictionLinePoint striction_line(const CSurface& surface, double s);
double striction_offset(const AltApparatus& app);

/// P = f sin(theta) / (f^2 + g^2).
double distribution_closed(const CSurface& surface, double s);
double distribution_closed(const AltApparatus& app);

/// Closed-form first and second fundamental forms, K, H and the unit normal.
/// Throws SingularPoint when D < kSingularD and FrameUndefined when g' is
/// unavailable at a curvature zero.
FormBundle forms_closed(const CSurface& surface, double s, double v);
FormBundle forms_closed(const AltApparatus& app, double v);

/// Everything the closed forms give at one surface point.
struct CPointReport {
  Vec3 position;
  FormBundle forms;
  double f = 0.0, g = 0.0, f_prime = 0.0, g_prime = 0.0;
  double cos_theta = 1.0, sin_theta = 0.0;
  double P = 0.0;
  double v_star = 0.0;
};

/// Throws as forms_closed does.
CPointReport point_report(const CSurface& surface, double s, double v);

/// Orientation of the surface normal along the base curve: at v = 0 the unit
/// normal is -sign(sin theta) N, so the normal curvature is
/// kappa_n = -sign(sin theta) f cos(theta) (sign taken as +1 for sin theta = 0).
double base_orientation(const AltApparatus& app);

/// (0, -sign(sin theta) f cos(theta), 0).
SurfaceCurveCurvatures base_curvatures(const CSurface& surface, double s);
SurfaceCurveCurvatures base_curvatures(const AltApparatus& app);

/// Closed forms for the striction line:
///   kappa_g = f g cos^2(theta) / sqrt(f^2 + g^2),
///   kappa_n = -f^2 cos(theta) / sqrt(f^2 + g^2),
///   tau_g   = f g cos^2(theta),
/// with kappa_g and kappa_n multiplied by the same orientation sign as the base
/// curve. These agree with the oracle when g = 0 and are reported, not
/// gated, otherwise.
SurfaceCurveCurvatures striction_curvatures(const CSurface& surface, double s);
SurfaceCurveCurvatures striction_curvatures(const AltApparatus& app);

struct Biconditional {
  std::string id;
  std::string statement;
  bool lhs = false;
  bool rhs = false;
  bool holds = false;
};

struct PredicateReport {
  bool striction_equals_base = false;
  bool developable = false;
  bool minimal = false;
  bool base_geodesic = false;
  bool base_asymptotic = false;
  bool base_principal = false;
  bool striction_geodesic = false;
  bool striction_asymptotic = false;
  bool striction_principal = false;
  CurveClass curve_class;
  std::vector<Biconditional> checks;
  double tol = 0.0;
  int s_samples_used = 0;
  int s_samples_skipped = 0;
  int singular_points_skipped = 0;

  bool all_checks_hold() const;
};

/// Samples the closed forms on `samples` equispaced s (inactive ones skipped)
/// and a five-point v grid, and checks every predicate against the curve class.
PredicateReport corollary_predicates(const CSurface& surface, int samples, double tol);

}  // namespace cruled
