#pragma once

#include <array>
#include <span>

#include "cruled/vec3.hpp"

namespace cruled {

inline constexpr int kMaxJetOrder = 5;

/// Truncated Taylor jet of a scalar function of one variable.
///
/// Entry k holds the k-th derivative itself (not divided by k!), so frame
/// formulas read directly as f, f', f'', ...  The order is carried at run
/// time; binary operations truncate to the smaller order of their operands,
/// which is how loss of derivative information (e.g. differentiating a jet)
/// propagates through a computation.
class Jet {
 public:
  Jet() = default;

  static Jet constant(double value, int order = kMaxJetOrder);
  /// The identity function at `value`: derivative 1, higher derivatives 0.
  static Jet variable(double value, int order = kMaxJetOrder);

  int order() const noexcept { return order_; }
  double value() const noexcept { return d_[0]; }
  double operator[](int k) const { return d_[k]; }
  double& operator[](int k) { return d_[k]; }

  /// d/ds of this jet; the order drops by one.
  Jet derivative() const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double a);
  Jet& operator*=(double a);

 private:
  std::array<double, kMaxJetOrder + 1> d_{};
  int order_ = kMaxJetOrder;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(Jet a, const Jet& b);
Jet operator/(Jet a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator+(Jet a, double b);
Jet operator+(double a, Jet b);
Jet operator-(Jet a, double b);
Jet operator-(double a, const Jet& b);
Jet operator*(Jet a, double b);
Jet operator*(double a, Jet b);
Jet operator/(Jet a, double b);
Jet operator/(double a, const Jet& b);

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet atan(const Jet& a);
Jet pow(const Jet& a, int n);

/// Taylor composition outer(inner(s)) where `outer_derivs[k]` is the k-th
/// derivative of the outer function at inner.value().
Jet compose(std::span<const double> outer_derivs, const Jet& inner);

/// Three scalar jets of a common order: a space curve and its derivatives.
struct VecJet {
  Jet x;
  Jet y;
  Jet z;

  int order() const noexcept;
  Vec3 value() const { return {x.value(), y.value(), z.value()}; }
  /// The k-th derivative vector.
  Vec3 operator[](int k) const { return {x[k], y[k], z[k]}; }
  VecJet derivative() const { return {x.derivative(), y.derivative(), z.derivative()}; }
  VecJet truncated(int order) const;

  static VecJet constant(const Vec3& v, int order = kMaxJetOrder);
};

VecJet operator+(const VecJet& a, const VecJet& b);
VecJet operator-(const VecJet& a, const VecJet& b);
VecJet operator-(const VecJet& a);
VecJet operator*(const Jet& s, const VecJet& a);
VecJet operator*(double s, const VecJet& a);
VecJet operator/(const VecJet& a, const Jet& s);
Jet dot(const VecJet& a, const VecJet& b);
VecJet cross(const VecJet& a, const VecJet& b);
Jet norm(const VecJet& a);
VecJet normalized(const VecJet& a);

}  // namespace cruled
