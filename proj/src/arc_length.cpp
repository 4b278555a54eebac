#include "cruled/arc_length.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cruled/errors.hpp"

namespace cruled {
namespace {

constexpr int kRegularitySamples = 1024;
constexpr int kMaxSubdivision = 40;
using PanelRule = boost::math::quadrature::gauss<double, 20>;
using ErrorRule = boost::math::quadrature::gauss_kronrod<double, 15>;

}  // namespace

ArcLengthCurve::ArcLengthCurve(std::shared_ptr<const CurveEvaluator> base, ArcLengthOptions options)
    : base_(std::move(base)), options_(options) {
  const Interval d = base_->domain();
  for (int i = 0; i < kRegularitySamples; ++i) {
    const double t = d.lo + d.length() * i / (kRegularitySamples - 1);
    if (speed(t) < options_.min_speed) {
      throw GeomError(ErrorKind::NonRegularCurve,
                      "speed below " + std::to_string(options_.min_speed) + " at t = " + std::to_string(t));
    }
  }

  const auto f = [this](double t) { return speed(t); };
  const double total_estimate = PanelRule::integrate(f, d.lo, d.hi);

  // Bisect until the Gauss-Kronrod error estimate of each panel is within its
  // share of the tolerance.
  std::function<void(double, double, int)> subdivide = [&](double a, double b, int depth) {
    double err = 0.0;
    ErrorRule::integrate(f, a, b, 0, 0.0, &err);
    const double budget = options_.quadrature_tol * std::max(1.0, total_estimate) * (b - a) / d.length();
    if (err <= budget || depth >= kMaxSubdivision) {
      breaks_.push_back(b);
      return;
    }
    const double mid = 0.5 * (a + b);
    subdivide(a, mid, depth + 1);
    subdivide(mid, b, depth + 1);
  };
  // Start from a uniform partition so long curves are not under-resolved.
  constexpr int kInitialPanels = 16;
  breaks_.push_back(d.lo);
  for (int i = 0; i < kInitialPanels; ++i) {
    const double a = d.lo + d.length() * i / kInitialPanels;
    const double b = i + 1 == kInitialPanels ? d.hi : d.lo + d.length() * (i + 1) / kInitialPanels;
    subdivide(a, b, 0);
  }

  cumulative_.assign(breaks_.size(), 0.0);
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
    cumulative_[k + 1] = cumulative_[k] + PanelRule::integrate(f, breaks_[k], breaks_[k + 1]);
  }
}

double ArcLengthCurve::speed(double t) const { return norm(base_->jet(t, 1)[1]); }

double ArcLengthCurve::partial(std::size_t panel, double t) const {
  if (t == breaks_[panel]) return 0.0;
  return PanelRule::integrate([this](double x) { return speed(x); }, breaks_[panel], t);
}

double ArcLengthCurve::arc_length_at(double t) const {
  const Interval d = base_->domain();
  if (!d.contains(t)) throw GeomError(ErrorKind::OutOfDomain, "t = " + std::to_string(t));
  t = std::clamp(t, d.lo, d.hi);
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  std::size_t k = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  k = std::min(k, breaks_.size() - 2);
  return cumulative_[k] + partial(k, t);
}

double ArcLengthCurve::parameter_at(double s) const {
  if (!domain().contains_extended(s)) {
    throw GeomError(ErrorKind::OutOfDomain,
                    "arc length " + std::to_string(s) + " outside [0, " + std::to_string(total_length()) + "]");
  }
  if (!domain().contains(s)) return extrapolated_parameter(s);
  s = std::clamp(s, 0.0, total_length());
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t k = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  k = std::min(k, breaks_.size() - 2);

  const double a = breaks_[k];
  const double b = breaks_[k + 1];
  const double target = s - cumulative_[k];
  double t = a + (b - a) * target / (cumulative_[k + 1] - cumulative_[k]);
  constexpr int kMaxIterations = 60;
  bool converged = false;
  for (int i = 0; i < kMaxIterations; ++i) {
    const double step = (partial(k, t) - target) / speed(t);
    t = std::clamp(t - step, a, b);
    if (std::fabs(step) <= options_.inversion_tol * (1.0 + std::fabs(t))) {
      if (converged) break;
      // One polishing step past the tolerance keeps t(s) smooth to rounding.
      converged = true;
    }
  }
  return t;
}

// Beyond either end: Newton on the speed integral from the nearest endpoint,
// the base curve being evaluated inside its own evaluation margin.
double ArcLengthCurve::extrapolated_parameter(double s) const {
  const Interval d = base_->domain();
  const bool below = s < 0.0;
  const double t_end = below ? d.lo : d.hi;
  const double target = below ? s : s - total_length();
  const auto f = [this](double x) { return speed(x); };
  double t = t_end + target / speed(t_end);
  for (int i = 0; i < 60; ++i) {
    const double len = t < t_end ? -PanelRule::integrate(f, t, t_end) : PanelRule::integrate(f, t_end, t);
    const double step = (len - target) / speed(t);
    t -= step;
    if (std::fabs(step) <= options_.inversion_tol * (1.0 + std::fabs(t))) break;
  }
  return t;
}

VecJet ArcLengthCurve::jet(double s, int order) const {
  if (order < 0 || order > kMaxJetOrder) {
    throw GeomError(ErrorKind::InvalidArgument, "jet order must be in 0..5");
  }
  const double t0 = parameter_at(s);
  const VecJet a = base_->jet(t0, order);

  std::array<double, kMaxJetOrder + 1> ax{}, ay{}, az{};
  for (int k = 0; k <= order; ++k) {
    ax[k] = a.x[k];
    ay[k] = a.y[k];
    az[k] = a.z[k];
  }
  const auto n = static_cast<std::size_t>(order) + 1;

  // t(s) order by order: t^(m+1) = (1/|alpha'(t(s))|)^(m).
  Jet t = Jet::constant(t0, 0);
  for (int m = 0; m < order; ++m) {
    const VecJet velocity{compose(std::span(ax).subspan(1, n - 1), t),
                          compose(std::span(ay).subspan(1, n - 1), t),
                          compose(std::span(az).subspan(1, n - 1), t)};
    const Jet inv_speed = 1.0 / norm(velocity);
    Jet next = Jet::constant(t0, m + 1);
    for (int k = 1; k <= m; ++k) next[k] = t[k];
    next[m + 1] = inv_speed[m];
    t = next;
  }
  return {compose(std::span(ax).first(n), t), compose(std::span(ay).first(n), t),
          compose(std::span(az).first(n), t)};
}

std::shared_ptr<const ArcLengthCurve> arc_length_reparameterize(const CurveDef& def, double tol) {
  if (!(tol > 0.0)) throw GeomError(ErrorKind::InvalidArgument, "tolerance must be > 0");
  ArcLengthOptions options;
  options.quadrature_tol = tol;
  options.inversion_tol = std::min(options.inversion_tol, tol);
  return std::make_shared<const ArcLengthCurve>(std::make_shared<const ExpressionCurve>(def), options);
}

UnitSpeedCurve prepare_unit_speed(const CurveDef& def, double tol, ArcLengthOptions options) {
  auto curve = std::make_shared<const ExpressionCurve>(def);
  const SpeedCheck check = unit_speed_check(*curve, 256, tol);
  if (check.unit_speed) return {curve, false, check.max_deviation};
  if (def.assume_unit_speed) {
    throw GeomError(ErrorKind::NotUnitSpeed,
                    "curve '" + def.name + "' is declared unit speed but deviates by " +
                        std::to_string(check.max_deviation));
  }
  return {std::make_shared<const ArcLengthCurve>(curve, options), true, check.max_deviation};
}

}  // namespace cruled
