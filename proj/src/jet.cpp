#include "cruled/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cruled/errors.hpp"

namespace cruled {
namespace {

using Coeffs = std::array<double, kMaxJetOrder + 1>;

constexpr std::array<double, kMaxJetOrder + 1> kFactorial = {1.0, 1.0, 2.0, 6.0, 24.0, 120.0};

// Derivative values <-> normalized Taylor coefficients.
Coeffs to_taylor(const Jet& a) {
  Coeffs t{};
  for (int k = 0; k <= a.order(); ++k) t[k] = a[k] / kFactorial[k];
  return t;
}

Jet from_taylor(const Coeffs& t, int order) {
  Jet r = Jet::constant(0.0, order);
  for (int k = 0; k <= order; ++k) r[k] = t[k] * kFactorial[k];
  return r;
}

Jet checked(Jet r, const char* op) {
  for (int k = 0; k <= r.order(); ++k) {
    if (!std::isfinite(r[k])) {
      throw GeomError(ErrorKind::EvaluationSingularity,
                      std::string("non-finite result in ") + op);
    }
  }
  return r;
}

}  // namespace

Jet Jet::constant(double value, int order) {
  Jet j;
  j.order_ = std::clamp(order, 0, kMaxJetOrder);
  j.d_[0] = value;
  return j;
}

Jet Jet::variable(double value, int order) {
  Jet j = constant(value, order);
  if (j.order_ >= 1) j.d_[1] = 1.0;
  return j;
}

Jet Jet::derivative() const {
  if (order_ == 0) {
    throw GeomError(ErrorKind::InvalidArgument, "cannot differentiate an order-0 jet");
  }
  Jet r = constant(0.0, order_ - 1);
  for (int k = 0; k < order_; ++k) r.d_[k] = d_[k + 1];
  return r;
}

Jet Jet::truncated(int order) const {
  Jet r = *this;
  r.order_ = std::clamp(std::min(order, order_), 0, kMaxJetOrder);
  for (int k = r.order_ + 1; k <= kMaxJetOrder; ++k) r.d_[k] = 0.0;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= order_; ++k) d_[k] += o.d_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= order_; ++k) d_[k] -= o.d_[k];
  return *this;
}

// Leibniz rule on derivative values: (ab)^(k) = sum C(k,j) a^(j) b^(k-j).
Jet& Jet::operator*=(const Jet& o) {
  const int n = std::min(order_, o.order_);
  const Coeffs a = to_taylor(*this);
  const Coeffs b = to_taylor(o);
  Coeffs c{};
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= k; ++j) c[k] += a[j] * b[k - j];
  }
  *this = from_taylor(c, n);
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  if (o.d_[0] == 0.0) {
    throw GeomError(ErrorKind::EvaluationSingularity, "division by zero");
  }
  const int n = std::min(order_, o.order_);
  const Coeffs a = to_taylor(*this);
  const Coeffs b = to_taylor(o);
  Coeffs c{};
  for (int k = 0; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= b[j] * c[k - j];
    c[k] = acc / b[0];
  }
  *this = checked(from_taylor(c, n), "division");
  return *this;
}

Jet& Jet::operator+=(double a) {
  d_[0] += a;
  return *this;
}

Jet& Jet::operator*=(double a) {
  for (int k = 0; k <= order_; ++k) d_[k] *= a;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(Jet a, const Jet& b) { return a *= b; }
Jet operator/(Jet a, const Jet& b) { return a /= b; }
Jet operator-(const Jet& a) { return a * -1.0; }
Jet operator+(Jet a, double b) { return a += b; }
Jet operator+(double a, Jet b) { return b += a; }
Jet operator-(Jet a, double b) { return a += -b; }
Jet operator-(double a, const Jet& b) { return -b + a; }
Jet operator*(Jet a, double b) { return a *= b; }
Jet operator*(double a, Jet b) { return b *= a; }
Jet operator/(Jet a, double b) {
  if (b == 0.0) throw GeomError(ErrorKind::EvaluationSingularity, "division by zero");
  return a *= 1.0 / b;
}
Jet operator/(double a, const Jet& b) { return Jet::constant(a, b.order()) / b; }

namespace {

// sin and cos share one recurrence: s' = c a', c' = -s a'.
void sin_cos(const Jet& x, Jet& s_out, Jet& c_out) {
  const int n = x.order();
  const Coeffs a = to_taylor(x);
  Coeffs s{}, c{};
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (int k = 1; k <= n; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a[j] * c[k - j];
      cc -= j * a[j] * s[k - j];
    }
    s[k] = ss / k;
    c[k] = cc / k;
  }
  s_out = from_taylor(s, n);
  c_out = from_taylor(c, n);
}

}  // namespace

Jet sin(const Jet& a) {
  Jet s, c;
  sin_cos(a, s, c);
  return s;
}

Jet cos(const Jet& a) {
  Jet s, c;
  sin_cos(a, s, c);
  return c;
}

// t' = (1 + t^2) a'
Jet tan(const Jet& x) {
  if (std::cos(x.value()) == 0.0) {
    throw GeomError(ErrorKind::EvaluationSingularity, "tan at a pole");
  }
  const int n = x.order();
  const Coeffs a = to_taylor(x);
  Coeffs t{}, w{};
  t[0] = std::tan(a[0]);
  w[0] = 1.0 + t[0] * t[0];
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a[j] * w[k - j];
    t[k] = acc / k;
    double wk = 0.0;
    for (int i = 0; i <= k; ++i) wk += t[i] * t[k - i];
    w[k] = wk;
  }
  return checked(from_taylor(t, n), "tan");
}

Jet exp(const Jet& x) {
  const int n = x.order();
  const Coeffs a = to_taylor(x);
  Coeffs e{};
  e[0] = std::exp(a[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * a[j] * e[k - j];
    e[k] = acc / k;
  }
  return checked(from_taylor(e, n), "exp");
}

Jet log(const Jet& x) {
  if (!(x.value() > 0.0)) {
    throw GeomError(ErrorKind::EvaluationSingularity, "log of nonpositive value");
  }
  const int n = x.order();
  const Coeffs a = to_taylor(x);
  Coeffs l{};
  l[0] = std::log(a[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j < k; ++j) acc += j * l[j] * a[k - j];
    l[k] = (a[k] - acc / k) / a[0];
  }
  return from_taylor(l, n);
}

Jet sqrt(const Jet& x) {
  const double v = x.value();
  if (v < 0.0 || (v == 0.0 && x.order() > 0)) {
    throw GeomError(ErrorKind::EvaluationSingularity, "sqrt of negative value or derivative of sqrt at 0");
  }
  const int n = x.order();
  const Coeffs a = to_taylor(x);
  Coeffs r{};
  r[0] = std::sqrt(a[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (2.0 * r[0]);
  }
  return from_taylor(r, n);
}

// y' (1 + a^2) = a'
Jet atan(const Jet& x) {
  const int n = x.order();
  const Coeffs a = to_taylor(x);
  Coeffs q{};
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= k; ++j) q[k] += a[j] * a[k - j];
  }
  q[0] += 1.0;
  Coeffs y{};
  y[0] = std::atan(a[0]);
  for (int k = 1; k <= n; ++k) {
    double acc = k * a[k];
    for (int j = 1; j < k; ++j) acc -= j * y[j] * q[k - j];
    y[k] = acc / (k * q[0]);
  }
  return from_taylor(y, n);
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet result = Jet::constant(1.0, a.order());
  Jet base = a;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Jet compose(std::span<const double> outer_derivs, const Jet& inner) {
  const int n = inner.order();
  Jet delta = inner;
  delta[0] = 0.0;
  Jet result = Jet::constant(outer_derivs.empty() ? 0.0 : outer_derivs[0], n);
  Jet power = Jet::constant(1.0, n);
  const int terms = std::min<int>(n, static_cast<int>(outer_derivs.size()) - 1);
  for (int k = 1; k <= terms; ++k) {
    power *= delta;
    result += power * (outer_derivs[k] / kFactorial[k]);
  }
  return result;
}

int VecJet::order() const noexcept { return std::min(x.order(), std::min(y.order(), z.order())); }

VecJet VecJet::truncated(int order) const {
  return {x.truncated(order), y.truncated(order), z.truncated(order)};
}

VecJet VecJet::constant(const Vec3& v, int order) {
  return {Jet::constant(v.x, order), Jet::constant(v.y, order), Jet::constant(v.z, order)};
}

VecJet operator+(const VecJet& a, const VecJet& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
VecJet operator-(const VecJet& a, const VecJet& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
VecJet operator-(const VecJet& a) { return {-a.x, -a.y, -a.z}; }
VecJet operator*(const Jet& s, const VecJet& a) { return {s * a.x, s * a.y, s * a.z}; }
VecJet operator*(double s, const VecJet& a) { return {s * a.x, s * a.y, s * a.z}; }
VecJet operator/(const VecJet& a, const Jet& s) {
  const Jet inv = 1.0 / s;
  return inv * a;
}

Jet dot(const VecJet& a, const VecJet& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

VecJet cross(const VecJet& a, const VecJet& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Jet norm(const VecJet& a) { return sqrt(dot(a, a)); }

VecJet normalized(const VecJet& a) { return a / norm(a); }

}  // namespace cruled
