#pragma once

#include <functional>
#include <memory>
#include <span>
#include <utility>

#include "cruled/curve.hpp"
#include "cruled/vec3.hpp"

namespace cruled {

/// First and second fundamental form coefficients with the derived
/// curvatures and unit normal at one surface point.
struct FormBundle {
  double E = 0.0, F = 0.0, G = 0.0;
  double L = 0.0, M = 0.0, N = 0.0;
  double K = 0.0, H = 0.0;
  Vec3 n;
};

/// Geodesic curvature, normal curvature and geodesic torsion of a curve on a
/// surface, with derivatives taken with respect to the curve's arc length.
/// The torsion is <n x n', T'>, which differs from the classical
/// <n x n', T> whenever both curvatures are nonzero.
struct SurfaceCurveCurvatures {
  double kappa_g = 0.0;
  double kappa_n = 0.0;
  double tau_g = 0.0;
};

/// phi(s, v) = base(s) + v * ruling(s).
struct RuledSurfaceDef {
  std::shared_ptr<const CurveEvaluator> base;    // unit speed
  std::shared_ptr<const CurveEvaluator> ruling;  // unit vectors, jets of order >= 1
  Interval v_domain{-1.0, 1.0};

  Vec3 point(double s, double v) const;
  /// Max | |X(s)| - 1 | over equispaced samples.
  double max_ruling_norm_error(int samples) const;
};

struct StrictionPoint {
  Vec3 point;
  double offset = 0.0;  // u(s) = -<T, X'> / |X'|^2
};

/// Throws CylindricalRuling when |X'| < 1e-8.
StrictionPoint striction_point(const RuledSurfaceDef& surface, double s);
/// det(T, X, X') / |X'|^2, the determinant taken as <T, X x X'>.
double distribution_parameter(const RuledSurfaceDef& surface, double s);

using SurfaceFn = std::function<Vec3(double s, double v)>;
/// Maps a curve parameter t to surface parameters (s, v).
using DomainCurve = std::function<std::pair<double, double>(double t)>;

inline constexpr double kDefaultFdStep = 1e-3;

struct OracleForms {
  FormBundle forms;
  /// Largest entry change between the extrapolated bundle and the plain
  /// central-difference bundle at h/2.
  double error_estimate = 0.0;
};

/// Fundamental forms from central differences at h and h/2 combined by one
/// Richardson step. Throws DegenerateTangentPlane when |phi_s x phi_v| < 1e-8.
OracleForms oracle_forms_with_estimate(const SurfaceFn& phi, double s, double v, double h = kDefaultFdStep);
FormBundle oracle_forms(const SurfaceFn& phi, double s, double v, double h = kDefaultFdStep);

/// Unit normal phi_s x phi_v / |phi_s x phi_v| from Richardson-extrapolated
/// first partials.
Vec3 oracle_normal(const SurfaceFn& phi, double s, double v, double h = kDefaultFdStep);

/// Curvatures of beta(t) = phi(domain(t)) at t. Derivatives in t are
/// converted to arc-length derivatives by dividing by the local speed |beta_t|,
/// i.e. the curve is treated as locally reparameterized to unit speed.
/// Throws NonRegularCurve when |beta_t| < 1e-8.
SurfaceCurveCurvatures oracle_curve_curvatures(const SurfaceFn& phi, const DomainCurve& domain, double t,
                                               double h = kDefaultFdStep);

struct SurfaceCurveFlags {
  bool geodesic = false;
  bool asymptotic = false;
  bool principal = false;
};

/// Needs at least 8 samples.
SurfaceCurveFlags classify_surface_curve(std::span<const SurfaceCurveCurvatures> samples, double tol);

}  // namespace cruled
