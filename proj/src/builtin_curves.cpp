#include "cruled/builtin_curves.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "cruled/errors.hpp"

namespace cruled {
namespace {

using std::cos;
using std::sin;
using std::sqrt;

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ReferenceValues example_41_reference() {
  ReferenceValues r;
  r.source = "example-4.1";
  r.gold = true;
  r.f = [](double) { return 1.0 / kSqrt2; };
  r.g = [](double) { return 0.0; };
  r.v_star = [](double) { return 0.0; };
  r.P = [](double) { return 1.0; };
  r.E = [](double, double v) { return v * v / 2.0 + 1.0; };
  r.F = [](double, double) { return -1.0 / kSqrt2; };
  r.G = [](double, double) { return 1.0; };
  r.L = [](double, double v) { return -1.0 / (2.0 * sqrt(v * v + 1.0)); };
  r.M = [](double, double v) { return 1.0 / sqrt(2.0 * v * v + 2.0); };
  r.N = [](double, double) { return 0.0; };
  r.K = [](double, double v) { return -1.0 / ((v * v + 1.0) * (v * v + 1.0)); };
  r.H = [](double, double v) { return 1.0 / (2.0 * std::pow(v * v + 1.0, 1.5)); };
  r.n = [](double s, double v) {
    return Vec3{cos(s / kSqrt2), sin(s / kSqrt2), -v} / sqrt(v * v + 1.0);
  };
  r.C = [](double s) { return Vec3{sin(s / kSqrt2), -cos(s / kSqrt2), 0.0}; };
  r.base = [](double) { return SurfaceCurveCurvatures{0.0, -0.5, 0.0}; };
  r.striction = r.base;
  return r;
}

ReferenceValues example_42_reference() {
  ReferenceValues r;
  r.source = "example-4.2";
  r.gold = false;
  const auto root = [](double s, double v) {
    return sqrt(2.0 * v * sin(s) + 2.0 * v * v + 1.0 - cos(s) * cos(s));
  };
  r.f = [](double) { return 1.0; };
  r.g = [](double) { return -1.0; };
  r.v_star = [](double s) { return -sin(s) / 2.0; };
  r.P = [](double s) { return -sin(s) / 2.0; };
  r.E = [](double s, double v) { return 2.0 * v * sin(s) + 2.0 * v * v + 1.0; };
  r.F = [](double s, double) { return -cos(s); };
  r.G = [](double, double) { return 1.0; };
  r.L = [root](double s, double v) { return cos(s) * (sin(s) + v) / root(s, v); };
  r.M = [root](double s, double v) { return -sin(s) / root(s, v); };
  r.N = [](double, double) { return 0.0; };
  r.K = [](double, double v) { return -1.0 / ((v * v + 1.0) * (v * v + 1.0)); };
  r.H = [](double, double v) { return 1.0 / (2.0 * std::pow(v * v + 1.0, 1.5)); };
  r.n = [root](double s, double v) {
    const double w = kSqrt2 * s;
    return kSqrt2 / (2.0 * root(s, v)) * Vec3{-sin(w) * sin(s), -cos(w) * sin(s), sin(s) + 2.0 * v};
  };
  r.C = [](double s) { return Vec3{-cos(kSqrt2 * s), sin(kSqrt2 * s), 0.0}; };
  r.base = [](double s) { return SurfaceCurveCurvatures{0.0, cos(s), 0.0}; };
  r.striction = [](double s) {
    const double c = cos(s);
    const double q = 7.0 * c * c + 2.0;
    return SurfaceCurveCurvatures{3.0 * kSqrt2 / q, 3.0 * c / kSqrt2, -18.0 * c / std::pow(q, 1.5)};
  };
  return r;
}

}  // namespace

CurveDef helix_curve(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(b)) {
    throw GeomError(ErrorKind::InvalidArgument, "helix needs a > 0 and finite b");
  }
  const double c = std::hypot(a, b);
  const std::string arg = "(s/" + num(c) + ")";
  return make_curve_def("helix:" + num(a) + ":" + num(b),
                        {num(a) + "*cos" + arg, num(a) + "*sin" + arg, num(b) + "*s/" + num(c)},
                        {0.0, 2.0 * kPi * c}, true);
}

BuiltinCurve builtin_curve(const std::string& name) {
  if (name == "example-4.1") {
    return {make_curve_def(name, {"cos(s/sqrt(2))", "sin(s/sqrt(2))", "s/sqrt(2)"}, {0.0, 4.0 * kPi}, true),
            example_41_reference()};
  }
  if (name == "example-4.2") {
    return {make_curve_def(name,
                           {"3/sqrt(2)*sin(sqrt(2)*s)*cos(s) - 2*sin(s)*cos(sqrt(2)*s)",
                            "3/sqrt(2)*cos(sqrt(2)*s)*cos(s) + 2*sin(s)*sin(sqrt(2)*s)", "-1/sqrt(2)*cos(s)"},
                           {0.0, 2.0 * kPi}, true),
            example_42_reference()};
  }
  if (name == "circle") {
    return {make_curve_def(name, {"cos(s)", "sin(s)", "0"}, {0.0, 2.0 * kPi}, true), std::nullopt};
  }
  if (name.rfind("helix:", 0) == 0) {
    const std::string rest = name.substr(6);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw GeomError(ErrorKind::InvalidArgument, "expected helix:a:b");
    try {
      return {helix_curve(std::stod(rest.substr(0, colon)), std::stod(rest.substr(colon + 1))), std::nullopt};
    } catch (const std::logic_error&) {
      throw GeomError(ErrorKind::InvalidArgument, "malformed helix parameters in '" + name + "'");
    }
  }
  throw GeomError(ErrorKind::InvalidArgument, "unknown built-in curve '" + name + "'");
}

bool is_builtin_name(const std::string& name) {
  return name == "example-4.1" || name == "example-4.2" || name == "circle" || name.rfind("helix:", 0) == 0;
}

std::vector<std::string> builtin_names() { return {"example-4.1", "example-4.2", "circle", "helix:a:b"}; }

}  // namespace cruled
