#include "cruled/c_surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cruled/errors.hpp"

namespace cruled {
namespace {

// C(s) exposed as a vector field with jets of order <= 2.
class RulingField final : public CurveEvaluator {
 public:
  explicit RulingField(CSurface surface) : surface_(std::move(surface)) {}

  VecJet jet(double s, int order) const override {
    if (order == 0) return VecJet::constant(surface_.ruling(s), 0);
    return surface_.frame_jets(s).C.truncated(order);
  }
  Interval domain() const override { return surface_.s_domain(); }
  std::string name() const override { return "C(" + surface_.base().name() + ")"; }

 private:
  CSurface surface_;
};

std::string describe(const char* what, double at) {
  std::ostringstream os;
  os.precision(17);
  os << what << " near s = " << at;
  return os.str();
}

}  // namespace

CSurface::CSurface(UnitSpeedCurve base, NormalConvention convention, Interval v_range)
    : base_(std::move(base)), convention_(convention), v_range_(v_range) {
  if (!(v_range_.lo < v_range_.hi)) throw GeomError(ErrorKind::EmptyDomain, "v range is empty");
  sweep_ = std::make_shared<const FrameSweep>(*base_.curve, 1024);
  const Interval d = s_domain();
  if (!sweep_->any_defined()) {
    throw GeomError(ErrorKind::DegenerateBaseCurve, "curvature vanishes on the whole domain (straight line)");
  }

  const auto& samples = sweep_->samples();
  const double step = samples.size() > 1 ? samples[1].s - samples[0].s : d.length();
  std::vector<TrimRecord> windows;
  const auto bad = [](const FrameSweep::Sample& x) { return !x.defined || std::fabs(x.kappa) < kTrimKappa; };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (bad(samples[i])) {
      std::size_t j = i;
      while (j + 1 < samples.size() && bad(samples[j + 1])) ++j;
      windows.push_back({{samples[i].s - step - kTrimMargin, samples[j].s + step + kTrimMargin},
                         describe("|kappa| < 1e-6", 0.5 * (samples[i].s + samples[j].s))});
      i = j;
    } else if (i + 1 < samples.size() && !bad(samples[i + 1]) && samples[i].kappa * samples[i + 1].kappa < 0.0) {
      const double zero =
          samples[i].s + step * samples[i].kappa / (samples[i].kappa - samples[i + 1].kappa);
      windows.push_back({{samples[i].s - kTrimMargin, samples[i + 1].s + kTrimMargin},
                         describe("curvature sign change", zero)});
    }
  }
  // Merge overlaps and clip to the domain.
  for (const auto& w : windows) {
    Interval clipped{std::max(w.excised.lo, d.lo), std::min(w.excised.hi, d.hi)};
    if (!trim_log_.empty() && clipped.lo <= trim_log_.back().excised.hi) {
      trim_log_.back().excised.hi = std::max(trim_log_.back().excised.hi, clipped.hi);
      trim_log_.back().reason += "; " + w.reason;
    } else {
      trim_log_.push_back({clipped, w.reason});
    }
  }
  double cursor = d.lo;
  for (const auto& w : trim_log_) {
    if (w.excised.lo > cursor) active_.push_back({cursor, w.excised.lo});
    cursor = std::max(cursor, w.excised.hi);
  }
  if (cursor < d.hi) active_.push_back({cursor, d.hi});
  if (active_.empty()) {
    throw GeomError(ErrorKind::DegenerateBaseCurve, "no part of the domain has a defined frame");
  }
}

bool CSurface::is_active(double s) const {
  return std::any_of(active_.begin(), active_.end(), [s](const Interval& i) { return s >= i.lo && s <= i.hi; });
}

std::optional<Vec3> CSurface::reference(double s) const {
  if (convention_ == NormalConvention::Strict) return std::nullopt;
  return sweep_->reference_normal(s);
}

AltFrameJets CSurface::frame_jets(double s) const {
  return alternative_jets(base_.curve->jet(s, kMaxJetOrder), convention_, reference(s));
}

AltApparatus CSurface::apparatus(double s) const { return apparatus_from_jets(frame_jets(s)); }

Vec3 CSurface::ruling(double s) const {
  const FrenetJets fr = frenet_jets(base_.curve->jet(s, 3), convention_, reference(s));
  const VecJet dN = fr.N.derivative();
  return normalized(dN.value());
}

Vec3 CSurface::point(double s, double v) const { return base_.curve->point(s) + v * ruling(s); }

RuledSurfaceDef CSurface::as_ruled_surface() const {
  return {base_.curve, std::make_shared<const RulingField>(*this), v_range_};
}

SurfaceFn CSurface::surface_fn() const {
  return [surface = *this](double s, double v) { return surface.point(s, v); };
}

CSurface make_c_surface(const CurveDef& curve, NormalConvention convention, Interval v_range) {
  return CSurface(prepare_unit_speed(curve), convention, v_range);
}

Vec3 eval_point(const CSurface& surface, double s, double v) {
  if (!surface.s_domain().contains(s) || !surface.v_domain().contains(v)) {
    throw GeomError(ErrorKind::OutOfDomain, "(s, v) outside the surface domain");
  }
  return surface.point(s, v);
}

namespace {

double f2_plus_g2(const AltApparatus& app) {
  const double den = app.f * app.f + app.g * app.g;
  if (den < 1e-12) throw GeomError(ErrorKind::SingularPoint, "f^2 + g^2 below 1e-12");
  return den;
}

}  // namespace

double striction_offset(const AltApparatus& app) { return -app.g * app.sin_theta / f2_plus_g2(app); }

StrictionLinePoint striction_line(const CSurface& surface, double s) {
  const AltApparatus app = surface.apparatus(s);
  const double v_star = striction_offset(app);
  return {surface.base().point(s) + v_star * app.C, v_star};
}

double distribution_closed(const AltApparatus& app) { return app.f * app.sin_theta / f2_plus_g2(app); }

double distribution_closed(const CSurface& surface, double s) { return distribution_closed(surface.apparatus(s)); }

FormBundle forms_closed(const AltApparatus& app, double v) {
  const double f = app.f, g = app.g, fp = app.f_prime, gp = app.g_prime;
  const double c = app.cos_theta, sn = app.sin_theta;
  const double a = sn + v * g;
  const double D = v * v * f * f + a * a;
  if (D < kSingularD) throw GeomError(ErrorKind::SingularPoint, "D below 1e-12");
  if (!app.has_g_prime) {
    throw GeomError(ErrorKind::FrameUndefined, "g' unavailable at a curvature zero");
  }
  const double root = std::sqrt(D);
  const double cross_term = v * v * (fp * g - f * gp);

  FormBundle b;
  b.E = v * v * f * f + c * c + a * a;
  b.F = -c;
  b.G = 1.0;
  b.L = (cross_term + sn * (v * fp - f * c) - v * f * g * c) / root;
  b.M = f * sn / root;
  b.N = 0.0;
  b.K = -f * f * sn * sn / (D * D);
  b.H = (cross_term + v * fp * sn + f * sn * c - v * f * g * c) / (2.0 * D * root);
  b.n = (-a * app.N - v * f * app.W) / root;
  return b;
}

FormBundle forms_closed(const CSurface& surface, double s, double v) {
  return forms_closed(surface.apparatus(s), v);
}

CPointReport point_report(const CSurface& surface, double s, double v) {
  const AltApparatus app = surface.apparatus(s);
  CPointReport r;
  r.forms = forms_closed(app, v);
  r.position = surface.base().point(s) + v * app.C;
  r.f = app.f;
  r.g = app.g;
  r.f_prime = app.f_prime;
  r.g_prime = app.g_prime;
  r.cos_theta = app.cos_theta;
  r.sin_theta = app.sin_theta;
  r.P = distribution_closed(app);
  r.v_star = striction_offset(app);
  return r;
}

double base_orientation(const AltApparatus& app) { return app.sin_theta < 0.0 ? -1.0 : 1.0; }

SurfaceCurveCurvatures base_curvatures(const AltApparatus& app) {
  return {0.0, -base_orientation(app) * app.f * app.cos_theta, 0.0};
}

SurfaceCurveCurvatures base_curvatures(const CSurface& surface, double s) {
  return base_curvatures(surface.apparatus(s));
}

SurfaceCurveCurvatures striction_curvatures(const AltApparatus& app) {
  const double den = f2_plus_g2(app);
  const double root = std::sqrt(den);
  const double sigma = base_orientation(app);
  const double c2 = app.cos_theta * app.cos_theta;
  return {sigma * app.f * app.g * c2 / root, -sigma * app.f * app.f * app.cos_theta / root,
          app.f * app.g * c2};
}

SurfaceCurveCurvatures striction_curvatures(const CSurface& surface, double s) {
  return striction_curvatures(surface.apparatus(s));
}

bool PredicateReport::all_checks_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const Biconditional& b) { return b.holds; });
}

PredicateReport corollary_predicates(const CSurface& surface, int samples, double tol) {
  if (samples < 16) throw GeomError(ErrorKind::InvalidArgument, "corollary_predicates needs >= 16 samples");
  PredicateReport r;
  r.tol = tol;
  r.curve_class = classify_curve(surface.base(), samples, tol);

  const Interval d = surface.s_domain();
  const Interval vr = surface.v_domain();
  constexpr int kVSamples = 5;
  double max_v_star = 0.0, max_p = 0.0, max_h = 0.0;
  std::vector<SurfaceCurveCurvatures> base, striction;
  for (int i = 0; i < samples; ++i) {
    const double s = d.lo + d.length() * i / (samples - 1);
    if (!surface.is_active(s)) {
      ++r.s_samples_skipped;
      continue;
    }
    const AltApparatus app = surface.apparatus(s);
    ++r.s_samples_used;
    max_v_star = std::max(max_v_star, std::fabs(striction_offset(app)));
    max_p = std::max(max_p, std::fabs(distribution_closed(app)));
    base.push_back(base_curvatures(app));
    striction.push_back(striction_curvatures(app));
    for (int j = 0; j < kVSamples; ++j) {
      const double v = vr.lo + vr.length() * j / (kVSamples - 1);
      try {
        max_h = std::max(max_h, std::fabs(forms_closed(app, v).H));
      } catch (const GeomError& e) {
        if (e.kind() != ErrorKind::SingularPoint) throw;
        ++r.singular_points_skipped;
      }
    }
  }
  if (base.size() < 8) {
    throw GeomError(ErrorKind::InvalidArgument, "fewer than 8 active samples for the predicate report");
  }
  r.striction_equals_base = max_v_star <= tol;
  r.developable = max_p <= tol;
  r.minimal = max_h <= tol;
  const SurfaceCurveFlags bf = classify_surface_curve(base, tol);
  const SurfaceCurveFlags sf = classify_surface_curve(striction, tol);
  r.base_geodesic = bf.geodesic;
  r.base_asymptotic = bf.asymptotic;
  r.base_principal = bf.principal;
  r.striction_geodesic = sf.geodesic;
  r.striction_asymptotic = sf.asymptotic;
  r.striction_principal = sf.principal;

  const CurveKind kind = r.curve_class.kind;
  const bool planar = kind == CurveKind::Planar;
  const bool g_zero = kind == CurveKind::Helix || planar;
  const auto add = [&](std::string id, std::string statement, bool lhs, bool rhs, bool holds) {
    r.checks.push_back({std::move(id), std::move(statement), lhs, rhs, holds});
  };
  add("striction_equals_base", "striction line equals base curve <=> base is a helix or planar", r.striction_equals_base, g_zero,
      r.striction_equals_base == g_zero);
  add("developable", "developable <=> base is planar", r.developable, planar, r.developable == planar);
  add("minimal", "base is planar => minimal", planar, r.minimal, !planar || r.minimal);
  add("base_geodesic_principal", "base curve is geodesic and principal", r.base_geodesic, r.base_principal,
      r.base_geodesic && r.base_principal);
  add("base_not_asymptotic", "base curve is not asymptotic", r.base_asymptotic, false, !r.base_asymptotic);
  add("striction_geodesic", "striction line geodesic <=> base is a helix or planar", r.striction_geodesic, g_zero,
      r.striction_geodesic == g_zero);
  add("striction_principal", "striction line principal <=> base is a helix or planar", r.striction_principal, g_zero,
      r.striction_principal == g_zero);
  add("striction_not_asymptotic", "striction line is not asymptotic", r.striction_asymptotic, false, !r.striction_asymptotic);
  return r;
}

}  // namespace cruled
