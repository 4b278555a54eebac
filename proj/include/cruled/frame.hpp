#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cruled/curve.hpp"
#include "cruled/jet.hpp"

namespace cruled {

/// How the principal normal is oriented.
///  Strict: N = T'/|T'|, kappa >= 0, undefined wherever kappa vanishes.
///  Smooth: N is carried continuously through isolated curvature zeros by
///          aligning with a reference normal from a sweep in increasing s;
///          kappa is signed accordingly.
enum class NormalConvention { Strict, Smooth };

const char* to_string(NormalConvention c) noexcept;
NormalConvention parse_convention(const std::string& text);

inline constexpr double kKappaMin = 1e-8;
inline constexpr double kFMin = 1e-8;
inline constexpr double kSpeedTolerance = 1e-8;

struct FrenetData {
  Vec3 T, N, B;
  double kappa = 0.0;
  double tau = 0.0;
  double kappa_prime = 0.0;
  double tau_prime = 0.0;
};

struct FrenetJets {
  VecJet T, N, B;
  Jet kappa, tau;
};

/// Frenet frame jets of a unit-speed curve jet (order >= 3 for tau).
///
/// With the Smooth convention and a reference normal, a point where
/// |kappa| < kKappaMin is treated as a simple curvature zero: the normal is
/// taken from T'(s+h)/h, which costs one derivative order.
FrenetJets frenet_jets(const VecJet& curve_jet, NormalConvention convention,
                       const std::optional<Vec3>& reference_normal = std::nullopt);

FrenetData frenet_apparatus(const VecJet& curve_jet, NormalConvention convention,
                            const std::optional<Vec3>& reference_normal = std::nullopt);

/// Alternative moving frame {N, C, W} and curvatures f, g as jets.
struct AltFrameJets {
  FrenetJets frenet;
  VecJet N, C, W;
  Jet f, g;
};

AltFrameJets alternative_jets(const VecJet& curve_jet, NormalConvention convention,
                              const std::optional<Vec3>& reference_normal = std::nullopt);

/// Pointwise alternative-frame data. The angle whose derivative is g is
/// carried only through cos_theta = kappa/f and sin_theta = tau/f.
struct AltApparatus {
  Vec3 N, C, W;
  double f = 0.0;
  double g = 0.0;
  double f_prime = 0.0;
  double g_prime = 0.0;
  double cos_theta = 1.0;
  double sin_theta = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
  /// False at a Smooth-convention curvature zero, where g' needs a sixth
  /// curve derivative; g_prime is NaN then.
  bool has_g_prime = true;
};

AltApparatus apparatus_from_jets(const AltFrameJets& jets);

/// Throws DegenerateBaseCurve when f < kFMin.
AltApparatus alternative_apparatus(const VecJet& curve_jet, NormalConvention convention,
                                   const std::optional<Vec3>& reference_normal = std::nullopt);

struct TangentBinormal {
  Vec3 T;
  Vec3 B;
};

/// T = -cos(theta) C + sin(theta) W,  B = sin(theta) C + cos(theta) W.
TangentBinormal reconstruct_frenet(const AltApparatus& app);

/// Residuals of N' = fC, C' = -fN + gW, W' = -gC from jet derivatives.
struct FrameResiduals {
  double dN = 0.0;
  double dC = 0.0;
  double dW = 0.0;
  double max() const;
};

FrameResiduals frame_ode_residuals(const AltFrameJets& jets);

enum class CurveKind { StraightLine, Planar, Helix, General };

const char* to_string(CurveKind k) noexcept;

struct CurveClass {
  CurveKind kind = CurveKind::General;
  double max_f = 0.0;
  double max_abs_g = 0.0;
  double max_abs_sin_theta = 0.0;
  double tol = 0.0;
  int samples = 0;
  /// Samples where kappa < kKappaMin, excluded from the g and sin(theta) evidence.
  int skipped = 0;
};

/// StraightLine if max f <= tol, else Planar if max |sin theta| <= tol, else
/// Helix if max |g| <= tol, else General. Expects a unit-speed curve.
CurveClass classify_curve(const CurveEvaluator& curve, int samples, double tol);
/// Reparameterizes to unit speed first when needed.
CurveClass classify_curve(const CurveDef& curve, int samples, double tol);

/// Precomputed orientation of the principal normal along a curve, swept in
/// increasing s. Read-only after construction.
class FrameSweep {
 public:
  struct Sample {
    double s = 0.0;
    bool defined = false;
    Vec3 normal;
    double kappa = 0.0;  // signed against `normal`
  };

  explicit FrameSweep(const CurveEvaluator& curve, int min_samples = 2048);

  /// Smooth normal at the nearest defined sample at or before s.
  std::optional<Vec3> reference_normal(double s) const;

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  bool any_defined() const noexcept { return any_defined_; }

 private:
  bool build(const CurveEvaluator& curve, int count);

  Interval domain_;
  double step_ = 0.0;
  std::vector<Sample> samples_;
  bool any_defined_ = false;
};

}  // namespace cruled
