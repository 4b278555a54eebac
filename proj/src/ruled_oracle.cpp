#include "cruled/ruled_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "cruled/errors.hpp"

namespace cruled {

Vec3 RuledSurfaceDef::point(double s, double v) const { return base->point(s) + v * ruling->point(s); }

double RuledSurfaceDef::max_ruling_norm_error(int samples) const {
  const Interval d = ruling->domain();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = d.lo + d.length() * i / std::max(1, samples - 1);
    worst = std::max(worst, std::fabs(norm(ruling->point(s)) - 1.0));
  }
  return worst;
}

namespace {

constexpr double kCylindricalThreshold = 1e-8;
constexpr double kDegenerateThreshold = 1e-8;

struct RulingAt {
  Vec3 T, X, dX;
};

RulingAt ruling_at(const RuledSurfaceDef& surface, double s) {
  const VecJet base = surface.base->jet(s, 1);
  const VecJet x = surface.ruling->jet(s, 1);
  RulingAt r{base[1], x.value(), x[1]};
  if (norm(r.dX) < kCylindricalThreshold) {
    throw GeomError(ErrorKind::CylindricalRuling, "|X'| below threshold at s = " + std::to_string(s));
  }
  return r;
}

}  // namespace

StrictionPoint striction_point(const RuledSurfaceDef& surface, double s) {
  const RulingAt r = ruling_at(surface, s);
  const double offset = -dot(r.T, r.dX) / dot(r.dX, r.dX);
  return {surface.base->point(s) + offset * r.X, offset};
}

double distribution_parameter(const RuledSurfaceDef& surface, double s) {
  const RulingAt r = ruling_at(surface, s);
  return triple(r.T, r.X, r.dX) / dot(r.dX, r.dX);
}

namespace {

struct Partials {
  Vec3 s, v, ss, sv, vv;
};

Partials central(const SurfaceFn& phi, double s, double v, double h) {
  const Vec3 c = phi(s, v);
  const Vec3 sp = phi(s + h, v), sm = phi(s - h, v);
  const Vec3 vp = phi(s, v + h), vm = phi(s, v - h);
  const Vec3 pp = phi(s + h, v + h), pm = phi(s + h, v - h);
  const Vec3 mp = phi(s - h, v + h), mm = phi(s - h, v - h);
  const double h2 = h * h;
  return {(sp - sm) / (2.0 * h),     (vp - vm) / (2.0 * h),
          (sp - 2.0 * c + sm) / h2,  (pp - pm - mp + mm) / (4.0 * h2),
          (vp - 2.0 * c + vm) / h2};
}

Vec3 richardson(const Vec3& coarse, const Vec3& fine) { return (4.0 * fine - coarse) / 3.0; }

FormBundle forms_from_partials(const Partials& p) {
  FormBundle b;
  b.E = dot(p.s, p.s);
  b.F = dot(p.s, p.v);
  b.G = dot(p.v, p.v);
  const Vec3 normal = cross(p.s, p.v);
  const double area = norm(normal);
  if (area < kDegenerateThreshold) {
    throw GeomError(ErrorKind::DegenerateTangentPlane, "|phi_s x phi_v| below threshold");
  }
  const double det = b.E * b.G - b.F * b.F;
  const double root = std::sqrt(det);
  b.L = triple(p.s, p.v, p.ss) / root;
  b.M = triple(p.s, p.v, p.sv) / root;
  b.N = triple(p.s, p.v, p.vv) / root;
  b.K = (b.L * b.N - b.M * b.M) / det;
  b.H = (b.E * b.N - 2.0 * b.F * b.M + b.G * b.L) / (2.0 * det);
  b.n = normal / area;
  return b;
}

double max_entry_diff(const FormBundle& a, const FormBundle& b) {
  const double d[] = {a.E - b.E, a.F - b.F, a.G - b.G, a.L - b.L, a.M - b.M,
                      a.N - b.N, a.K - b.K, a.H - b.H};
  double worst = max_abs_diff(a.n, b.n);
  for (double x : d) worst = std::max(worst, std::fabs(x));
  return worst;
}

}  // namespace

OracleForms oracle_forms_with_estimate(const SurfaceFn& phi, double s, double v, double h) {
  const Partials coarse = central(phi, s, v, h);
  const Partials fine = central(phi, s, v, 0.5 * h);
  const Partials extrapolated{richardson(coarse.s, fine.s), richardson(coarse.v, fine.v),
                              richardson(coarse.ss, fine.ss), richardson(coarse.sv, fine.sv),
                              richardson(coarse.vv, fine.vv)};
  OracleForms out;
  out.forms = forms_from_partials(extrapolated);
  out.error_estimate = max_entry_diff(out.forms, forms_from_partials(fine));
  return out;
}

FormBundle oracle_forms(const SurfaceFn& phi, double s, double v, double h) {
  return oracle_forms_with_estimate(phi, s, v, h).forms;
}

Vec3 oracle_normal(const SurfaceFn& phi, double s, double v, double h) {
  const auto first = [&](double step) {
    return std::pair{(phi(s + step, v) - phi(s - step, v)) / (2.0 * step),
                     (phi(s, v + step) - phi(s, v - step)) / (2.0 * step)};
  };
  const auto [cs, cv] = first(h);
  const auto [fs, fv] = first(0.5 * h);
  const Vec3 n = cross(richardson(cs, fs), richardson(cv, fv));
  const double area = norm(n);
  if (area < kDegenerateThreshold) {
    throw GeomError(ErrorKind::DegenerateTangentPlane, "|phi_s x phi_v| below threshold");
  }
  return n / area;
}

SurfaceCurveCurvatures oracle_curve_curvatures(const SurfaceFn& phi, const DomainCurve& domain, double t,
                                               double h) {
  const auto beta = [&](double x) {
    const auto [s, v] = domain(x);
    return phi(s, v);
  };
  const auto normal = [&](double x) {
    const auto [s, v] = domain(x);
    return oracle_normal(phi, s, v, h);
  };
  const auto d1 = [&](const auto& fn, double step) { return (fn(t + step) - fn(t - step)) / (2.0 * step); };
  const auto d2 = [&](const auto& fn, double step) {
    return (fn(t + step) - 2.0 * fn(t) + fn(t - step)) / (step * step);
  };

  const Vec3 beta_t = richardson(d1(beta, h), d1(beta, 0.5 * h));
  const Vec3 beta_tt = richardson(d2(beta, h), d2(beta, 0.5 * h));
  const double speed = norm(beta_t);
  if (speed < 1e-8) {
    throw GeomError(ErrorKind::NonRegularCurve, "|beta'| below threshold at t = " + std::to_string(t));
  }
  const Vec3 T = beta_t / speed;
  // Arc-length derivatives: d/dsigma = (1/|beta_t|) d/dt.
  const Vec3 dT = (beta_tt - dot(beta_tt, T) * T) / (speed * speed);
  const Vec3 n = normal(t);
  const Vec3 dn = richardson(d1(normal, h), d1(normal, 0.5 * h)) / speed;

  return {dot(cross(n, T), dT), dot(dT, n), dot(cross(n, dn), dT)};
}

SurfaceCurveFlags classify_surface_curve(std::span<const SurfaceCurveCurvatures> samples, double tol) {
  if (samples.size() < 8) {
    throw GeomError(ErrorKind::InvalidArgument, "classify_surface_curve needs >= 8 samples");
  }
  double kg = 0.0, kn = 0.0, tg = 0.0;
  for (const auto& c : samples) {
    kg = std::max(kg, std::fabs(c.kappa_g));
    kn = std::max(kn, std::fabs(c.kappa_n));
    tg = std::max(tg, std::fabs(c.tau_g));
  }
  return {kg <= tol, kn <= tol, tg <= tol};
}

}  // namespace cruled
