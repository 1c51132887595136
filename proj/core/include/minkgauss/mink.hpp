#pragma once

#include <cmath>
#include <span>
#include <sstream>
#include <utility>

#include "minkgauss/error.hpp"
#include "minkgauss/jet.hpp"

namespace minkgauss {

// Vector of Minkowski space E^4_1, signature (-,+,+,+); x0 is timelike.
// T is double for point values or Jet for fields expanded about a point.
template <class T>
struct BasicVec4 {
  T x0{}, x1{}, x2{}, x3{};

  T& operator[](int i) { return i == 0 ? x0 : i == 1 ? x1 : i == 2 ? x2 : x3; }
  const T& operator[](int i) const {
    return i == 0 ? x0 : i == 1 ? x1 : i == 2 ? x2 : x3;
  }

  BasicVec4& operator+=(const BasicVec4& o) {
    x0 += o.x0; x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  BasicVec4& operator-=(const BasicVec4& o) {
    x0 -= o.x0; x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  template <class S>
  BasicVec4& operator*=(const S& k) {
    x0 *= k; x1 *= k; x2 *= k; x3 *= k;
    return *this;
  }

  friend BasicVec4 operator+(BasicVec4 a, const BasicVec4& b) { return a += b; }
  friend BasicVec4 operator-(BasicVec4 a, const BasicVec4& b) { return a -= b; }
  friend BasicVec4 operator-(const BasicVec4& a) {
    return {-a.x0, -a.x1, -a.x2, -a.x3};
  }
  friend BasicVec4 operator*(BasicVec4 a, const T& k) { return a *= k; }
  friend BasicVec4 operator*(const T& k, BasicVec4 a) { return a *= k; }
  friend bool operator==(const BasicVec4&, const BasicVec4&) = default;
};

// 2-form of Lambda^2(E^4_1) in Plucker coordinates; p_ij multiplies e_i ^ e_j.
template <class T>
struct BasicBiv6 {
  T p01{}, p02{}, p03{}, p12{}, p13{}, p23{};

  static constexpr int kSize = 6;

  T& operator[](int i) {
    switch (i) {
      case 0: return p01;
      case 1: return p02;
      case 2: return p03;
      case 3: return p12;
      case 4: return p13;
      default: return p23;
    }
  }
  const T& operator[](int i) const {
    return const_cast<BasicBiv6&>(*this)[i];
  }

  BasicBiv6& operator+=(const BasicBiv6& o) {
    for (int i = 0; i < kSize; ++i) (*this)[i] += o[i];
    return *this;
  }
  BasicBiv6& operator-=(const BasicBiv6& o) {
    for (int i = 0; i < kSize; ++i) (*this)[i] -= o[i];
    return *this;
  }
  template <class S>
  BasicBiv6& operator*=(const S& k) {
    for (int i = 0; i < kSize; ++i) (*this)[i] *= k;
    return *this;
  }

  friend BasicBiv6 operator+(BasicBiv6 a, const BasicBiv6& b) { return a += b; }
  friend BasicBiv6 operator-(BasicBiv6 a, const BasicBiv6& b) { return a -= b; }
  friend BasicBiv6 operator-(BasicBiv6 a) { return a *= -1.0; }
  friend BasicBiv6 operator*(BasicBiv6 a, const T& k) { return a *= k; }
  friend BasicBiv6 operator*(const T& k, BasicBiv6 a) { return a *= k; }
  friend bool operator==(const BasicBiv6&, const BasicBiv6&) = default;
};

using Vec4 = BasicVec4<double>;
using Biv6 = BasicBiv6<double>;
using JetVec4 = BasicVec4<Jet>;
using JetBiv6 = BasicBiv6<Jet>;

template <class T>
T inner4(const BasicVec4<T>& u, const BasicVec4<T>& v) {
  return -(u.x0 * v.x0) + u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

template <class T>
BasicBiv6<T> wedge(const BasicVec4<T>& u, const BasicVec4<T>& v) {
  return {u.x0 * v.x1 - u.x1 * v.x0, u.x0 * v.x2 - u.x2 * v.x0,
          u.x0 * v.x3 - u.x3 * v.x0, u.x1 * v.x2 - u.x2 * v.x1,
          u.x1 * v.x3 - u.x3 * v.x1, u.x2 * v.x3 - u.x3 * v.x2};
}

// Index-3 metric induced through the Plucker identity: basis bivectors that
// contain e0 have squared norm -1.
template <class T>
T inner6(const BasicBiv6<T>& p, const BasicBiv6<T>& q) {
  return -(p.p01 * q.p01) - p.p02 * q.p02 - p.p03 * q.p03 + p.p12 * q.p12 +
         p.p13 * q.p13 + p.p23 * q.p23;
}

double euclidean_norm(const Vec4& v) noexcept;
double euclidean_norm(const Biv6& p) noexcept;
double euclidean_dot(const Vec4& u, const Vec4& v) noexcept;
double euclidean_dot(const Biv6& p, const Biv6& q) noexcept;

Vec4 values(const JetVec4& v);
Biv6 values(const BasicBiv6<Jet>& p);

Vec4 basis_vec4(int i);

// Euclidean determinant of the 4x4 matrix with columns a, b, c, d.
double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

constexpr double kLightlikeTol = 1e-12;
constexpr double kDegeneracyTol = 1e-9;

bool is_lightlike(const Vec4& u, double tol = kLightlikeTol) noexcept;

// Two nonzero lightlike vectors of a Lorentzian space are dependent exactly
// when they are orthogonal; this returns the orthogonality answer.
bool lightlike_dependent(const Vec4& u, const Vec4& v,
                         double tol = kLightlikeTol);

// Gram-determinant test under inner4, |det G| <= tol * prod |b_i|^2.
bool is_degenerate_subspace(std::span<const Vec4> basis,
                            double tol = kDegeneracyTol);

// Gram-Schmidt on a positive-definite plane: e3 = n1/|n1|, e4 completes an
// orthonormal pair with the orientation of (n1, n2).
template <class T>
std::pair<BasicVec4<T>, BasicVec4<T>> orthonormalize_pair(
    const BasicVec4<T>& n1, const BasicVec4<T>& n2,
    double tol = kDegeneracyTol) {
  using std::sqrt;
  const T g11 = inner4(n1, n1);
  const T g12 = inner4(n1, n2);
  const T g22 = inner4(n2, n2);
  const double a = value_of(g11), b = value_of(g12), c = value_of(g22);
  const double scale = std::abs(a) + std::abs(c);
  if (!(a > 0.0) || !(a * c - b * b > tol * scale * scale)) {
    std::ostringstream msg;
    msg << "normal pair is not positive definite (Gram " << a << ", " << b
        << ", " << c << ")";
    throw Error(ErrorCode::NotPositiveDefinite, msg.str());
  }
  BasicVec4<T> e3 = n1 * (1.0 / sqrt(g11));
  BasicVec4<T> w = n2 - e3 * inner4(n2, e3);
  BasicVec4<T> e4 = w * (1.0 / sqrt(inner4(w, w)));
  return {e3, e4};
}

}  // namespace minkgauss
