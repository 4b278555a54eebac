#include "cruled/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "cruled/errors.hpp"

namespace cruled {

bool Interval::contains(double x) const noexcept {
  const double slack = 1e-12 * (1.0 + std::max(std::fabs(lo), std::fabs(hi)));
  return x >= lo - slack && x <= hi + slack;
}

double Interval::evaluation_margin() const noexcept { return std::max(0.01 * length(), 0.01); }

bool Interval::contains_extended(double x) const noexcept {
  const double m = evaluation_margin();
  return x >= lo - m && x <= hi + m;
}

CurveDef make_curve_def(std::string name, const std::array<std::string, 3>& components,
                        Interval domain, bool assume_unit_speed) {
  if (!(domain.lo < domain.hi)) {
    throw GeomError(ErrorKind::EmptyDomain, "domain [" + std::to_string(domain.lo) + ", " +
                                                std::to_string(domain.hi) + "] is empty");
  }
  CurveDef def{std::move(name),
               {Expression::parse(components[0]), Expression::parse(components[1]),
                Expression::parse(components[2])},
               domain,
               assume_unit_speed};
  constexpr int kValidationSamples = 64;
  for (int i = 0; i < kValidationSamples; ++i) {
    const double s = domain.lo + domain.length() * i / (kValidationSamples - 1);
    for (const auto& c : def.components) {
      const double value = c.evaluate(s);
      if (!std::isfinite(value)) {
        throw GeomError(ErrorKind::EvaluationSingularity,
                        "component '" + c.source() + "' is not finite at s = " + std::to_string(s));
      }
    }
  }
  return def;
}

namespace {

double domain_bound(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return Expression::parse(j.get<std::string>()).evaluate(0.0);
  throw GeomError(ErrorKind::EmptyDomain, "domain bounds must be numbers or constant expressions");
}

}  // namespace

CurveDef parse_curve_spec(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(ErrorKind::Syntax, e.byte > 0 ? e.byte - 1 : 0, "malformed curve-spec JSON");
  }
  if (!j.is_object()) throw GeomError(ErrorKind::Syntax, "curve spec must be a JSON object");

  const auto comps = j.find("components");
  if (comps == j.end() || !comps->is_array() || comps->size() != 3) {
    throw GeomError(ErrorKind::MissingComponent, "exactly three components are required");
  }
  std::array<std::string, 3> components;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(*comps)[i].is_string()) {
      throw GeomError(ErrorKind::MissingComponent,
                      "component " + std::to_string(i) + " is not a string");
    }
    components[i] = (*comps)[i].get<std::string>();
  }

  const auto dom = j.find("domain");
  if (dom == j.end() || !dom->is_array() || dom->size() != 2) {
    throw GeomError(ErrorKind::EmptyDomain, "domain must be a two-element array");
  }
  const Interval domain{domain_bound((*dom)[0]), domain_bound((*dom)[1])};

  return make_curve_def(j.value("name", std::string("curve")), components, domain,
                        j.value("assume_unit_speed", false));
}

VecJet eval_jet(const CurveDef& curve, double s, int order) {
  if (!curve.domain.contains(s)) {
    throw GeomError(ErrorKind::OutOfDomain, "s = " + std::to_string(s) + " outside [" +
                                                std::to_string(curve.domain.lo) + ", " +
                                                std::to_string(curve.domain.hi) + "]");
  }
  return eval_jet_extended(curve, s, order);
}

VecJet eval_jet_extended(const CurveDef& curve, double s, int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw GeomError(ErrorKind::InvalidArgument, "jet order must be in 0..5");
  }
  if (!curve.domain.contains_extended(s)) {
    throw GeomError(ErrorKind::OutOfDomain, "s = " + std::to_string(s) + " outside [" +
                                                std::to_string(curve.domain.lo) + ", " +
                                                std::to_string(curve.domain.hi) + "]");
  }
  const Jet var = Jet::variable(s, order);
  return {curve.components[0].evaluate(var), curve.components[1].evaluate(var),
          curve.components[2].evaluate(var)};
}

SpeedCheck unit_speed_check(const CurveEvaluator& curve, int samples, double tol) {
  if (samples < 2) throw GeomError(ErrorKind::InvalidArgument, "unit_speed_check needs >= 2 samples");
  const Interval d = curve.domain();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = d.lo + d.length() * i / (samples - 1);
    const Vec3 velocity = curve.jet(s, 1)[1];
    worst = std::max(worst, std::fabs(norm(velocity) - 1.0));
  }
  return {worst <= tol, worst};
}

SpeedCheck unit_speed_check(const CurveDef& curve, int samples, double tol) {
  return unit_speed_check(ExpressionCurve(curve), samples, tol);
}

}  // namespace cruled
