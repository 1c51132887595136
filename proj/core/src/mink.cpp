#include "minkgauss/mink.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace minkgauss {

double euclidean_dot(const Vec4& u, const Vec4& v) noexcept {
  return u.x0 * v.x0 + u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

double euclidean_dot(const Biv6& p, const Biv6& q) noexcept {
  double acc = 0.0;
  for (int i = 0; i < Biv6::kSize; ++i) acc += p[i] * q[i];
  return acc;
}

double euclidean_norm(const Vec4& v) noexcept {
  return std::sqrt(euclidean_dot(v, v));
}

double euclidean_norm(const Biv6& p) noexcept {
  return std::sqrt(euclidean_dot(p, p));
}

Vec4 values(const JetVec4& v) {
  return {v.x0.value(), v.x1.value(), v.x2.value(), v.x3.value()};
}

Biv6 values(const JetBiv6& p) {
  Biv6 r;
  for (int i = 0; i < Biv6::kSize; ++i) r[i] = p[i].value();
  return r;
}

Vec4 basis_vec4(int i) {
  Vec4 e;
  e[i] = 1.0;
  return e;
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    m(i, 0) = a[i];
    m(i, 1) = b[i];
    m(i, 2) = c[i];
    m(i, 3) = d[i];
  }
  return m.determinant();
}

bool is_lightlike(const Vec4& u, double tol) noexcept {
  const double n2 = euclidean_dot(u, u);
  return n2 > 0.0 && std::abs(inner4(u, u)) <= tol * n2;
}

bool lightlike_dependent(const Vec4& u, const Vec4& v, double tol) {
  if (!is_lightlike(u, tol) || !is_lightlike(v, tol)) {
    std::ostringstream msg;
    msg << "lightlike_dependent needs nonzero lightlike inputs (<u,u> = "
        << inner4(u, u) << ", <v,v> = " << inner4(v, v) << ")";
    throw Error(ErrorCode::NotLightlike, msg.str());
  }
  return std::abs(inner4(u, v)) <= tol * euclidean_norm(u) * euclidean_norm(v);
}

bool is_degenerate_subspace(std::span<const Vec4> basis, double tol) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  if (k == 0) return false;
  Eigen::MatrixXd b(4, k);
  double scale2 = 1.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const Vec4& v = basis[static_cast<std::size_t>(j)];
    for (int i = 0; i < 4; ++i) b(i, j) = v[i];
    scale2 *= euclidean_dot(v, v);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  const auto& sv = svd.singularValues();
  if (k > 4 || sv(k - 1) <= 1e-12 * std::max(sv(0), 1e-300)) {
    throw Error(ErrorCode::DependentBasis,
                "subspace basis is not linearly independent");
  }
  Eigen::MatrixXd gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      gram(i, j) = inner4(basis[static_cast<std::size_t>(i)],
                          basis[static_cast<std::size_t>(j)]);
    }
  }
  return std::abs(gram.determinant()) <= tol * scale2;
}

}  // namespace minkgauss
