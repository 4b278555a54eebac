#include "cruled/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cruled/arc_length.hpp"
#include "cruled/errors.hpp"

namespace cruled {

const char* to_string(NormalConvention c) noexcept {
  return c == NormalConvention::Strict ? "strict" : "smooth";
}

NormalConvention parse_convention(const std::string& text) {
  if (text == "strict") return NormalConvention::Strict;
  if (text == "smooth") return NormalConvention::Smooth;
  throw GeomError(ErrorKind::InvalidArgument, "unknown convention '" + text + "'");
}

const char* to_string(CurveKind k) noexcept {
  switch (k) {
    case CurveKind::StraightLine: return "StraightLine";
    case CurveKind::Planar: return "Planar";
    case CurveKind::Helix: return "Helix";
    case CurveKind::General: return "General";
  }
  return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Jet of T'(s+h)/h assuming T'(s) = 0: entry k is T'^(k+1)/(k+1).
VecJet divide_out_zero(const VecJet& v) {
  const int order = v.order() - 1;
  VecJet q = VecJet::constant({}, order);
  for (int k = 0; k <= order; ++k) {
    q.x[k] = v.x[k + 1] / (k + 1);
    q.y[k] = v.y[k + 1] / (k + 1);
    q.z[k] = v.z[k + 1] / (k + 1);
  }
  return q;
}

// Principal normal jet. `allow_unreferenced_zero` lets the sweep seed itself
// at a curvature zero.
VecJet principal_normal(const VecJet& dT, NormalConvention convention,
                        const std::optional<Vec3>& reference, bool allow_unreferenced_zero) {
  const double kappa = norm(dT.value());
  VecJet raw;
  if (kappa >= kKappaMin) {
    raw = normalized(dT);
  } else {
    if (convention == NormalConvention::Strict) {
      throw GeomError(ErrorKind::FrameUndefined, "curvature below kappa_min");
    }
    if (!reference && !allow_unreferenced_zero) {
      throw GeomError(ErrorKind::FrameUndefined, "curvature zero without sweep context");
    }
    if (dT.order() < 1) {
      throw GeomError(ErrorKind::FrameUndefined, "curvature zero needs one more derivative order");
    }
    const VecJet q = divide_out_zero(dT);
    if (norm(q.value()) < kKappaMin) {
      throw GeomError(ErrorKind::FrameUndefined, "curvature vanishes to second order");
    }
    raw = normalized(q);
  }
  if (convention == NormalConvention::Smooth && reference && dot(raw.value(), *reference) < 0.0) {
    return -raw;
  }
  return raw;
}

FrenetJets frenet_jets_impl(const VecJet& curve_jet, NormalConvention convention,
                            const std::optional<Vec3>& reference, bool allow_unreferenced_zero) {
  if (curve_jet.order() < 2) {
    throw GeomError(ErrorKind::InvalidArgument, "Frenet frame needs a jet of order >= 2");
  }
  const VecJet T = curve_jet.derivative();
  const double speed = norm(T.value());
  if (std::fabs(speed - 1.0) > kSpeedTolerance) {
    throw GeomError(ErrorKind::NotUnitSpeed, "|alpha'| = " + std::to_string(speed));
  }
  const VecJet dT = T.derivative();
  const VecJet N = principal_normal(dT, convention, reference, allow_unreferenced_zero);
  const VecJet B = cross(T, N);
  const Jet kappa = dot(dT, N);
  Jet tau = Jet::constant(kNaN, 0);
  if (B.order() >= 1) tau = -dot(B.derivative(), N);
  return {T, N, B, kappa, tau};
}

}  // namespace

FrenetJets frenet_jets(const VecJet& curve_jet, NormalConvention convention,
                       const std::optional<Vec3>& reference_normal) {
  return frenet_jets_impl(curve_jet, convention, reference_normal, false);
}

FrenetData frenet_apparatus(const VecJet& curve_jet, NormalConvention convention,
                            const std::optional<Vec3>& reference_normal) {
  const FrenetJets j = frenet_jets(curve_jet, convention, reference_normal);
  return {j.T.value(),
          j.N.value(),
          j.B.value(),
          j.kappa.value(),
          j.tau.value(),
          j.kappa.order() >= 1 ? j.kappa[1] : kNaN,
          j.tau.order() >= 1 ? j.tau[1] : kNaN};
}

AltFrameJets alternative_jets(const VecJet& curve_jet, NormalConvention convention,
                              const std::optional<Vec3>& reference_normal) {
  if (curve_jet.order() < 3) {
    throw GeomError(ErrorKind::InvalidArgument, "alternative frame needs a jet of order >= 3");
  }
  FrenetJets fr = frenet_jets(curve_jet, convention, reference_normal);
  const Jet& kappa = fr.kappa;
  const Jet& tau = fr.tau;
  const Jet f2 = kappa * kappa + tau * tau;
  if (std::sqrt(f2.value()) < kFMin) {
    throw GeomError(ErrorKind::DegenerateBaseCurve, "f below threshold (straight line)");
  }
  const Jet f = sqrt(f2);
  // C = N'/|N'| with |N'| = f.
  const VecJet dN = fr.N.derivative();
  const VecJet C = dN / norm(dN);
  const VecJet W = (tau * fr.T + kappa * fr.B) / f;
  // g = (kappa^2/f^2)(tau/kappa)' written without the 1/kappa singularity.
  Jet g = Jet::constant(kNaN, 0);
  if (tau.order() >= 1) g = (tau.derivative() * kappa - kappa.derivative() * tau) / f2;
  VecJet N = fr.N;
  return {std::move(fr), std::move(N), C, W, f, g};
}

AltApparatus apparatus_from_jets(const AltFrameJets& j) {
  AltApparatus a;
  a.N = j.N.value();
  a.C = j.C.value();
  a.W = j.W.value();
  a.f = j.f.value();
  a.g = j.g.value();
  a.f_prime = j.f.order() >= 1 ? j.f[1] : kNaN;
  a.has_g_prime = j.g.order() >= 1;
  a.g_prime = a.has_g_prime ? j.g[1] : kNaN;
  a.kappa = j.frenet.kappa.value();
  a.tau = j.frenet.tau.value();
  a.cos_theta = a.kappa / a.f;
  a.sin_theta = a.tau / a.f;
  return a;
}

AltApparatus alternative_apparatus(const VecJet& curve_jet, NormalConvention convention,
                                   const std::optional<Vec3>& reference_normal) {
  return apparatus_from_jets(alternative_jets(curve_jet, convention, reference_normal));
}

TangentBinormal reconstruct_frenet(const AltApparatus& app) {
  return {-app.cos_theta * app.C + app.sin_theta * app.W, app.sin_theta * app.C + app.cos_theta * app.W};
}

double FrameResiduals::max() const { return std::max(dN, std::max(dC, dW)); }

FrameResiduals frame_ode_residuals(const AltFrameJets& j) {
  if (j.C.order() < 1 || j.W.order() < 1 || j.g.order() < 0) {
    throw GeomError(ErrorKind::InvalidArgument, "frame residuals need first derivatives");
  }
  const double f = j.f.value();
  const double g = j.g.value();
  const Vec3 N = j.N.value(), C = j.C.value(), W = j.W.value();
  return {norm(j.N[1] - f * C), norm(j.C[1] + f * N - g * W), norm(j.W[1] + g * C)};
}

CurveClass classify_curve(const CurveEvaluator& curve, int samples, double tol) {
  if (samples < 16) throw GeomError(ErrorKind::InvalidArgument, "classify_curve needs >= 16 samples");
  CurveClass out;
  out.tol = tol;
  out.samples = samples;
  const Interval d = curve.domain();
  for (int i = 0; i < samples; ++i) {
    const double s = d.lo + d.length() * i / (samples - 1);
    const VecJet jet = curve.jet(s, kMaxJetOrder);
    const double kappa = norm(jet[2]);
    if (kappa < kKappaMin) {
      out.max_f = std::max(out.max_f, kappa);
      ++out.skipped;
      continue;
    }
    const FrenetJets fr = frenet_jets(jet, NormalConvention::Strict);
    const double tau = fr.tau.value();
    const double f = std::hypot(kappa, tau);
    out.max_f = std::max(out.max_f, f);
    out.max_abs_sin_theta = std::max(out.max_abs_sin_theta, std::fabs(tau) / f);
    const double g = (fr.tau[1] * fr.kappa.value() - fr.kappa[1] * tau) / (f * f);
    out.max_abs_g = std::max(out.max_abs_g, std::fabs(g));
  }
  if (out.max_f <= tol) {
    out.kind = CurveKind::StraightLine;
  } else if (out.max_abs_sin_theta <= tol) {
    out.kind = CurveKind::Planar;
  } else if (out.max_abs_g <= tol) {
    out.kind = CurveKind::Helix;
  } else {
    out.kind = CurveKind::General;
  }
  return out;
}

CurveClass classify_curve(const CurveDef& curve, int samples, double tol) {
  return classify_curve(*prepare_unit_speed(curve).curve, samples, tol);
}

FrameSweep::FrameSweep(const CurveEvaluator& curve, int min_samples) : domain_(curve.domain()) {
  constexpr double kMaxSpacing = 2e-3;
  constexpr int kMaxSamples = 1 << 20;
  int count = std::max(min_samples, static_cast<int>(std::ceil(domain_.length() / kMaxSpacing)) + 1);
  while (!build(curve, count)) {
    if (count >= kMaxSamples) {
      throw GeomError(ErrorKind::FrameUndefined, "principal normal turns too fast to sweep");
    }
    count *= 2;
  }
}

bool FrameSweep::build(const CurveEvaluator& curve, int count) {
  samples_.assign(static_cast<std::size_t>(count), {});
  step_ = domain_.length() / (count - 1);
  any_defined_ = false;
  std::optional<Vec3> previous;
  for (int i = 0; i < count; ++i) {
    Sample& out = samples_[static_cast<std::size_t>(i)];
    out.s = i + 1 == count ? domain_.hi : domain_.lo + step_ * i;
    const VecJet jet = curve.jet(out.s, 3);
    try {
      const FrenetJets fr = frenet_jets_impl(jet, NormalConvention::Smooth, previous, true);
      out.normal = fr.N.value();
      out.kappa = fr.kappa.value();
      out.defined = true;
    } catch (const GeomError& e) {
      if (e.kind() != ErrorKind::FrameUndefined) throw;
      out.defined = false;
      out.normal = previous.value_or(Vec3{});
      out.kappa = 0.0;
    }
    if (out.defined) {
      // Neighbouring normals must stay well within a quarter turn for the
      // alignment test to be meaningful.
      if (previous && dot(out.normal, *previous) < 0.5) return false;
      previous = out.normal;
      any_defined_ = true;
    }
  }
  return true;
}

std::optional<Vec3> FrameSweep::reference_normal(double s) const {
  if (!any_defined_) return std::nullopt;
  const double x = (s - domain_.lo) / step_;
  auto k = static_cast<std::ptrdiff_t>(std::floor(x + 1e-9));
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(samples_.size()) - 1);
  for (std::ptrdiff_t i = k; i >= 0; --i) {
    if (samples_[static_cast<std::size_t>(i)].defined) return samples_[static_cast<std::size_t>(i)].normal;
  }
  for (auto i = static_cast<std::size_t>(k); i < samples_.size(); ++i) {
    if (samples_[i].defined) return samples_[i].normal;
  }
  return std::nullopt;
}

}  // namespace cruled
