#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cruled/curve.hpp"
#include "cruled/ruled_oracle.hpp"

namespace cruled {

/// Reference values attached to a built-in curve, as functions of (s, v).
/// `gold` values are expected to agree with both the closed forms and the
/// oracle; the others are carried for comparison only.
struct ReferenceValues {
  std::string source;  // e.g. "example-4.1"
  bool gold = false;

  std::function<double(double)> f, g, v_star, P;
  std::function<double(double, double)> E, F, G, L, M, N, K, H;
  std::function<Vec3(double, double)> n;
  std::function<Vec3(double)> C;  // ruling field
  std::function<SurfaceCurveCurvatures(double)> base, striction;
};

struct BuiltinCurve {
  CurveDef def;
  std::optional<ReferenceValues> reference;
};

/// "example-4.1", "example-4.2", "circle" or "helix:a:b".
/// Throws InvalidArgument for unknown names.
BuiltinCurve builtin_curve(const std::string& name);
bool is_builtin_name(const std::string& name);
std::vector<std::string> builtin_names();

/// Unit-speed circular helix (a cos(s/c), a sin(s/c), b s/c), c = sqrt(a^2 + b^2),
/// over one turn.
CurveDef helix_curve(double a, double b);

}  // namespace cruled
