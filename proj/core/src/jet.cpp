#include "minkgauss/jet.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "minkgauss/error.hpp"

namespace minkgauss {

namespace {

void check_order(int order) {
  if (order < 0 || order > Jet::kMaxOrder) {
    std::ostringstream msg;
    msg << "jet order " << order << " outside [0, " << Jet::kMaxOrder << "]";
    throw Error(ErrorCode::OrderExceeded, msg.str());
  }
}

void check_base(const Jet& a, const Jet& b) {
  if (a.base() != b.base()) {
    std::ostringstream msg;
    msg << "jets expanded at different base points (" << a.base().s << ", "
        << a.base().t << ") and (" << b.base().s << ", " << b.base().t << ")";
    throw Error(ErrorCode::MismatchedBase, msg.str());
  }
}

constexpr double kDivisionFloor = 1e-12;

Jet::Real factorial(int n) {
  Jet::Real f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sum_k taylor[k] * delta^k, where delta has a zero value coefficient.
Jet compose(const Jet& a, const std::array<Jet::Real, Jet::kMaxOrder + 1>& derivs) {
  const int n = a.order();
  Jet delta = a;
  delta.set_coeff(0, 0, 0.0);
  Jet r = Jet::constant(derivs[static_cast<std::size_t>(n)] / factorial(n),
                        a.base(), n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * delta;
    r += derivs[static_cast<std::size_t>(k)] / factorial(k);
  }
  return r;
}

}  // namespace

Jet::Jet(int order, ParamPoint base) : order_(order), base_(base) {
  check_order(order);
}

Jet Jet::constant(double value, ParamPoint base, int order) {
  Jet j(order, base);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(Var which, ParamPoint base, int order) {
  Jet j(order, base);
  j.c_[0] = which == Var::s ? base.s : base.t;
  if (order >= 1) {
    j.c_[which == Var::s ? index(1, 0) : index(0, 1)] = 1.0;
  }
  return j;
}

double Jet::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) {
    std::ostringstream msg;
    msg << "coefficient (" << a << ", " << b << ") exceeds jet order "
        << order_;
    throw Error(ErrorCode::OrderExceeded, msg.str());
  }
  return static_cast<double>(c_[index(a, b)]);
}

void Jet::set_coeff(int a, int b, double v) {
  if (a < 0 || b < 0 || a + b > order_) {
    std::ostringstream msg;
    msg << "coefficient (" << a << ", " << b << ") exceeds jet order "
        << order_;
    throw Error(ErrorCode::OrderExceeded, msg.str());
  }
  c_[index(a, b)] = v;
}

double Jet::partial(int a, int b) const {
  coeff(a, b);
  return static_cast<double>(c_[index(a, b)] * factorial(a) * factorial(b));
}

Jet Jet::derivative(Var which) const {
  if (order_ == 0) {
    throw Error(ErrorCode::OrderExhausted,
                "cannot differentiate a jet of order 0");
  }
  Jet d(order_ - 1, base_);
  for (int deg = 0; deg <= order_ - 1; ++deg) {
    for (int b = 0; b <= deg; ++b) {
      const int a = deg - b;
      d.c_[index(a, b)] = which == Var::s ? (a + 1) * c_[index(a + 1, b)]
                                          : (b + 1) * c_[index(a, b + 1)];
    }
  }
  return d;
}

Jet Jet::truncated(int order) const {
  check_order(order);
  Jet r(std::min(order, order_), base_);
  std::copy_n(c_.begin(), r.size(), r.c_.begin());
  return r;
}

double Jet::magnitude() const noexcept {
  Real m = 0.0L;
  for (std::size_t i = 0; i < size(); ++i) m = std::max(m, std::abs(c_[i]));
  return static_cast<double>(m);
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.c_[i] = -c_[i];
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  check_base(*this, rhs);
  order_ = std::min(order_, rhs.order_);
  for (std::size_t i = 0; i < size(); ++i) c_[i] += rhs.c_[i];
  for (std::size_t i = size(); i < kCapacity; ++i) c_[i] = 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  check_base(*this, rhs);
  order_ = std::min(order_, rhs.order_);
  for (std::size_t i = 0; i < size(); ++i) c_[i] -= rhs.c_[i];
  for (std::size_t i = size(); i < kCapacity; ++i) c_[i] = 0.0;
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(double rhs) noexcept {
  c_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) noexcept {
  c_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) noexcept {
  for (std::size_t i = 0; i < size(); ++i) c_[i] *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) {
    throw Error(ErrorCode::DivisionNearZero, "jet divided by zero scalar");
  }
  return *this *= 1.0 / rhs;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_base(a, b);
  const int n = std::min(a.order_, b.order_);
  Jet r(n, a.base_);
  for (int deg = 0; deg <= n; ++deg) {
    for (int q = 0; q <= deg; ++q) {
      const int p = deg - q;
      Jet::Real acc = 0.0L;
      for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) {
          acc += a.c_[Jet::index(i, j)] * b.c_[Jet::index(p - i, q - j)];
        }
      }
      r.c_[Jet::index(p, q)] = acc;
    }
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  check_base(a, b);
  const Jet::Real b0 = b.c_[0];
  if (std::abs(b0) <= kDivisionFloor * std::max(1.0, b.magnitude())) {
    std::ostringstream msg;
    msg << "division by a jet with value " << b0 << " at (" << b.base_.s
        << ", " << b.base_.t << ")";
    throw Error(ErrorCode::DivisionNearZero, msg.str());
  }
  const int n = std::min(a.order_, b.order_);
  Jet q(n, a.base_);
  for (int deg = 0; deg <= n; ++deg) {
    for (int qq = 0; qq <= deg; ++qq) {
      const int p = deg - qq;
      Jet::Real acc = a.c_[Jet::index(p, qq)];
      for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= qq; ++j) {
          if (i == 0 && j == 0) continue;
          acc -= b.c_[Jet::index(i, j)] * q.c_[Jet::index(p - i, qq - j)];
        }
      }
      q.c_[Jet::index(p, qq)] = acc / b0;
    }
  }
  return q;
}

Jet operator/(double a, const Jet& b) {
  return Jet::constant(a, b.base(), b.order()) / b;
}

Jet pow(const Jet& a, int exponent) {
  if (exponent < 0) return 1.0 / pow(a, -exponent);
  Jet result = Jet::constant(1.0, a.base(), a.order());
  Jet base = a;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return result;
}

namespace {

using Derivs = std::array<Jet::Real, Jet::kMaxOrder + 1>;

// Derivatives repeating with period 4 (sin, cos) or 2 (sinh, cosh).
Derivs cyclic(const std::array<Jet::Real, 4>& cycle, int n) {
  Derivs d{};
  for (int k = 0; k <= n; ++k) {
    d[static_cast<std::size_t>(k)] = cycle[static_cast<std::size_t>(k % 4)];
  }
  return d;
}

}  // namespace

Jet sin(const Jet& a) {
  const Jet::Real x = a.extended_value();
  return compose(a, cyclic({std::sin(x), std::cos(x), -std::sin(x),
                            -std::cos(x)},
                           a.order()));
}

Jet cos(const Jet& a) {
  const Jet::Real x = a.extended_value();
  return compose(a, cyclic({std::cos(x), -std::sin(x), -std::cos(x),
                            std::sin(x)},
                           a.order()));
}

Jet sinh(const Jet& a) {
  const Jet::Real x = a.extended_value();
  return compose(a, cyclic({std::sinh(x), std::cosh(x), std::sinh(x),
                            std::cosh(x)},
                           a.order()));
}

Jet cosh(const Jet& a) {
  const Jet::Real x = a.extended_value();
  return compose(a, cyclic({std::cosh(x), std::sinh(x), std::cosh(x),
                            std::sinh(x)},
                           a.order()));
}

Jet exp(const Jet& a) {
  const Jet::Real e = std::exp(a.extended_value());
  return compose(a, cyclic({e, e, e, e}, a.order()));
}

Jet sqrt(const Jet& a) {
  const Jet::Real x = a.extended_value();
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "sqrt of non-positive value " << x;
    throw Error(ErrorCode::DomainError, msg.str());
  }
  Derivs d{};
  Jet::Real falling = 1.0L;  // (1/2)(1/2 - 1)...(1/2 - k + 1)
  for (int k = 0; k <= a.order(); ++k) {
    d[static_cast<std::size_t>(k)] = falling * std::pow(x, 0.5L - k);
    falling *= 0.5 - k;
  }
  return compose(a, d);
}

Jet log(const Jet& a) {
  const Jet::Real x = a.extended_value();
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "log of non-positive value " << x;
    throw Error(ErrorCode::DomainError, msg.str());
  }
  Derivs d{};
  d[0] = std::log(x);
  Jet::Real fact = 1.0L;  // (k-1)!
  for (int k = 1; k <= a.order(); ++k) {
    d[static_cast<std::size_t>(k)] =
        ((k % 2 == 1) ? 1.0L : -1.0L) * fact / std::pow(x, k);
    fact *= k;
  }
  return compose(a, d);
}

std::ostream& operator<<(std::ostream& os, const Jet& j) {
  os << "Jet(order=" << j.order() << ", base=(" << j.base().s << ", "
     << j.base().t << "), [";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i != 0) os << ", ";
    os << j.data()[i];
  }
  return os << "])";
}

}  // namespace minkgauss
