#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <iosfwd>

namespace minkgauss {

// A point of the (s,t) parameter plane.
struct ParamPoint {
  double s = 0.0;
  double t = 0.0;

  friend auto operator<=>(const ParamPoint&, const ParamPoint&) = default;
};

enum class Var { s, t };

// Bivariate truncated Taylor expansion of a scalar field about a base point:
//
//   f(s0 + ds, t0 + dt) = sum_{a+b <= order} c_{ab} ds^a dt^b
//
// Coefficients are stored densely, grouped by total degree, so truncating to
// a lower order is a prefix of the same storage. Binary operations between
// jets of different orders produce a jet of the smaller order; the base points
// must agree exactly.
class Jet {
 public:
  // Coefficients are carried in extended precision; see README.
  using Real = long double;

  static constexpr int kMaxOrder = 8;
  static constexpr int kDefaultOrder = 5;
  static constexpr std::size_t kCapacity =
      static_cast<std::size_t>((kMaxOrder + 1) * (kMaxOrder + 2) / 2);

  Jet() = default;
  Jet(int order, ParamPoint base);

  static Jet constant(double value, ParamPoint base,
                      int order = kDefaultOrder);
  static Jet variable(Var which, ParamPoint base, int order = kDefaultOrder);

  static constexpr std::size_t size_for(int order) noexcept {
    return static_cast<std::size_t>((order + 1) * (order + 2) / 2);
  }
  static constexpr std::size_t index(int a, int b) noexcept {
    const int d = a + b;
    return static_cast<std::size_t>(d * (d + 1) / 2 + b);
  }

  int order() const noexcept { return order_; }
  ParamPoint base() const noexcept { return base_; }
  std::size_t size() const noexcept { return size_for(order_); }

  double value() const noexcept { return static_cast<double>(c_[0]); }
  Real extended_value() const noexcept { return c_[0]; }
  double coeff(int a, int b) const;
  void set_coeff(int a, int b, double v);

  // d^{a+b} f / ds^a dt^b at the base point.
  double partial(int a, int b) const;

  // Jet of df/ds or df/dt; one order lower.
  Jet derivative(Var which) const;
  Jet truncated(int order) const;

  // Largest coefficient magnitude.
  double magnitude() const noexcept;

  const Real* data() const noexcept { return c_.data(); }

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs) noexcept;
  Jet& operator-=(double rhs) noexcept;
  Jet& operator*=(double rhs) noexcept;
  Jet& operator/=(double rhs);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double b) noexcept { return a += b; }
  friend Jet operator+(double a, Jet b) noexcept { return b += a; }
  friend Jet operator-(Jet a, double b) noexcept { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return (-b) += a; }
  friend Jet operator*(Jet a, double b) noexcept { return a *= b; }
  friend Jet operator*(double a, Jet b) noexcept { return b *= a; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator/(double a, const Jet& b);

 private:
  int order_ = kDefaultOrder;
  ParamPoint base_{};
  std::array<Real, kCapacity> c_{};
};

Jet pow(const Jet& a, int exponent);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet exp(const Jet& a);
Jet sqrt(const Jet& a);
Jet log(const Jet& a);

inline double value_of(double x) noexcept { return x; }
inline double value_of(const Jet& j) noexcept { return j.value(); }

std::ostream& operator<<(std::ostream& os, const Jet& j);

}  // namespace minkgauss
