#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cruled/builtin_curves.hpp"
#include "cruled/c_surface.hpp"
#include "cruled/errors.hpp"

using namespace cruled;
using std::numbers::pi;

namespace {

const double kRoot2 = std::sqrt(2.0);

const CSurface& surface(const std::string& name) {
  static std::map<std::string, CSurface> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    it = cache.emplace(name, make_c_surface(builtin_curve(name).def, NormalConvention::Smooth)).first;
  }
  return it->second;
}

}  // namespace

TEST(MakeCSurface, Examples) {
  EXPECT_TRUE(surface("example-4.1").trim_log().empty());
  EXPECT_EQ(surface("example-4.2").trim_log().size(), 2u);
  EXPECT_FALSE(surface("example-4.2").is_active(pi / 2));
  EXPECT_TRUE(surface("example-4.2").is_active(1.0));
  try {
    make_c_surface(make_curve_def("line", {"s", "0", "0"}, {0, 1}, false), NormalConvention::Smooth);
    FAIL();
  } catch (const GeomError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateBaseCurve);
  }
  EXPECT_NO_THROW(surface("circle"));
}

TEST(EvalPoint, Examples) {
  EXPECT_LE(max_abs_diff(eval_point(surface("example-4.1"), 0, 1), {1, -1, 0}), 1e-12);
  EXPECT_LE(max_abs_diff(eval_point(surface("example-4.2"), 0, 0.5), {-0.5, 3 / kRoot2, -1 / kRoot2}), 1e-12);
  const CSurface& s = surface("example-4.2");
  for (double t : {0.3, 2.2}) EXPECT_LE(max_abs_diff(eval_point(s, t, 0), s.base().point(t)), 1e-15);
  EXPECT_THROW(eval_point(s, 100.0, 0.0), GeomError);
}

TEST(StrictionLine, Examples) {
  for (double s : {0.5, 3.0, 6.0}) {
    const StrictionLinePoint p = striction_line(surface("example-4.1"), s);
    EXPECT_NEAR(p.v_star, 0.0, 1e-12);
    EXPECT_LE(max_abs_diff(p.point, surface("example-4.1").base().point(s)), 1e-12);
    EXPECT_NEAR(striction_line(surface("circle"), s).v_star, 0.0, 1e-12);
  }
  EXPECT_NEAR(striction_line(surface("example-4.2"), pi / 2).v_star, -0.5, 1e-8);
}

TEST(Distribution, Examples) {
  EXPECT_NEAR(distribution_closed(surface("example-4.1"), 1.0), 1.0, 1e-12);
  EXPECT_NEAR(distribution_closed(surface("circle"), 1.0), 0.0, 1e-12);
  EXPECT_NEAR(distribution_closed(surface("example-4.2"), 1.0), -0.4207355, 1e-7);
}

TEST(FormsClosed, Example41AtOrigin) {
  const FormBundle b = forms_closed(surface("example-4.1"), 0.0, 1.0);
  EXPECT_NEAR(b.E, 1.5, 1e-12);
  EXPECT_NEAR(b.F, -1 / kRoot2, 1e-12);
  EXPECT_NEAR(b.G, 1.0, 1e-12);
  EXPECT_NEAR(b.L, -1 / (2 * kRoot2), 1e-12);
  EXPECT_NEAR(b.M, 0.5, 1e-12);
  EXPECT_EQ(b.N, 0.0);
  EXPECT_NEAR(b.K, -0.25, 1e-12);
  EXPECT_NEAR(b.H, std::pow(2.0, -2.5), 1e-12);
  EXPECT_LE(max_abs_diff(b.n, Vec3{1, 0, -1} / kRoot2), 1e-12);
}

TEST(FormsClosed, CircleIsMinimal) {
  for (double v : {-1.0, 0.4}) {
    const FormBundle b = forms_closed(surface("circle"), 2.0, v);
    for (double x : {b.L, b.M, b.N, b.K, b.H}) EXPECT_NEAR(x, 0.0, 1e-12);
  }
  EXPECT_THROW(forms_closed(surface("circle"), 2.0, 0.0), GeomError);  // D = v^2 vanishes
}

TEST(FormsClosed, Example42FirstForm) {
  const FormBundle b = forms_closed(surface("example-4.2"), 1.0, 0.3);
  EXPECT_NEAR(b.E, 2 * 0.3 * std::sin(1.0) + 2 * 0.09 + 1, 1e-12);
  EXPECT_NEAR(b.E, 1.6848826, 1e-7);
  EXPECT_NEAR(b.F, -0.5403023, 1e-7);
  EXPECT_NEAR(b.G, 1.0, 1e-12);
}

// The second form as written for Example 4.2 in closed form: L carries a
// cos(theta) factor on its v f g term.
TEST(FormsClosed, Example42SecondForm) {
  for (double s : {0.4, 1.0, 1.2}) {
    for (double v : {-0.4, 0.3}) {
      const FormBundle b = forms_closed(surface("example-4.2"), s, v);
      const double sn = std::sin(s), c = std::cos(s);
      const double D = v * v + (v + sn) * (v + sn);
      EXPECT_NEAR(b.L, (sn * c + v * c) / std::sqrt(D), 1e-10);
      EXPECT_NEAR(b.M, -sn / std::sqrt(D), 1e-10);
      EXPECT_NEAR(b.K, -sn * sn / (D * D), 1e-10);
    }
  }
}

TEST(PointReport, Example41) {
  const CPointReport r = point_report(surface("example-4.1"), 0.0, 1.0);
  EXPECT_LE(max_abs_diff(r.position, {1, -1, 0}), 1e-12);
  EXPECT_NEAR(r.forms.K, -0.25, 1e-12);
  EXPECT_NEAR(r.P, 1.0, 1e-12);
  EXPECT_NEAR(r.v_star, 0.0, 1e-12);
  EXPECT_NEAR(r.cos_theta * r.cos_theta + r.sin_theta * r.sin_theta, 1.0, 1e-14);
}

TEST(BaseCurvatures, Examples) {
  const SurfaceCurveCurvatures h = base_curvatures(surface("example-4.1"), 1.0);
  EXPECT_NEAR(h.kappa_g, 0, 1e-12);
  EXPECT_NEAR(h.kappa_n, -0.5, 1e-12);
  EXPECT_NEAR(h.tau_g, 0, 1e-12);
  EXPECT_NEAR(base_curvatures(surface("circle"), 1.0).kappa_n, -1.0, 1e-12);
  // On (0, pi), sin(theta) = -sin s < 0 flips the surface normal along the base
  // curve, so the oriented normal curvature is +cos s.
  EXPECT_NEAR(base_curvatures(surface("example-4.2"), 1.0).kappa_n, std::cos(1.0), 1e-10);
  EXPECT_NEAR(base_curvatures(surface("example-4.2"), 4.0).kappa_n, -std::cos(4.0), 1e-10);
}

TEST(StrictionCurvatures, Examples) {
  for (const char* name : {"example-4.1", "circle"}) {
    const SurfaceCurveCurvatures a = striction_curvatures(surface(name), 1.0);
    const SurfaceCurveCurvatures b = base_curvatures(surface(name), 1.0);
    EXPECT_NEAR(a.kappa_g, b.kappa_g, 1e-12);
    EXPECT_NEAR(a.kappa_n, b.kappa_n, 1e-12);
    EXPECT_NEAR(a.tau_g, b.tau_g, 1e-12);
  }
  const AltApparatus app = surface("example-4.2").apparatus(1.0);
  const SurfaceCurveCurvatures c = striction_curvatures(app);
  const double sigma = base_orientation(app);
  EXPECT_EQ(sigma, -1.0);
  EXPECT_NEAR(sigma * c.kappa_g, -0.2064233, 1e-7);
  EXPECT_NEAR(sigma * c.kappa_n, -0.3820514, 1e-7);
  EXPECT_NEAR(c.tau_g, -0.2919266, 1e-7);
}

TEST(Predicates, Examples) {
  const PredicateReport h = corollary_predicates(surface("example-4.1"), 64, 1e-7);
  EXPECT_EQ(h.curve_class.kind, CurveKind::Helix);
  EXPECT_TRUE(h.striction_equals_base);
  EXPECT_FALSE(h.developable);
  EXPECT_FALSE(h.minimal);
  EXPECT_TRUE(h.base_geodesic);
  EXPECT_TRUE(h.base_principal);
  EXPECT_FALSE(h.base_asymptotic);
  EXPECT_TRUE(h.striction_geodesic);
  EXPECT_TRUE(h.all_checks_hold());

  const PredicateReport c = corollary_predicates(surface("circle"), 64, 1e-7);
  EXPECT_TRUE(c.developable);
  EXPECT_TRUE(c.minimal);
  EXPECT_TRUE(c.striction_equals_base);
  EXPECT_TRUE(c.all_checks_hold());

  const PredicateReport g = corollary_predicates(surface("example-4.2"), 64, 1e-7);
  EXPECT_EQ(g.curve_class.kind, CurveKind::General);
  EXPECT_FALSE(g.striction_equals_base);
  EXPECT_FALSE(g.developable);
  EXPECT_FALSE(g.base_asymptotic);
  EXPECT_TRUE(g.all_checks_hold());
}

// Property: closed forms match the oracle on random helices of either hand.
TEST(CSurfaceProperty, HelixFormsMatchOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ab(0.2, 3.0), unit(0.05, 0.95), vv(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double b = ab(rng) * (trial % 2 ? -1.0 : 1.0);
    const CSurface s = make_c_surface(helix_curve(ab(rng), b), NormalConvention::Smooth);
    const double t = s.s_domain().lo + unit(rng) * s.s_domain().length();
    const double v = vv(rng);
    const FormBundle c = forms_closed(s, t, v);
    const FormBundle o = oracle_forms(s.surface_fn(), t, v);
    for (auto [x, y] : {std::pair{c.E, o.E}, {c.F, o.F}, {c.L, o.L}, {c.M, o.M}, {c.K, o.K}, {c.H, o.H}}) {
      EXPECT_NEAR(x, y, 1e-5);
    }
  }
}
