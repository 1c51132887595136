#include "minkgauss/verify/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace minkgauss::oracle {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Jet d(const Jet& j, int axis) { return j.derivative(axis == kS ? Var::s : Var::t); }

}  // namespace

double fd_partial(const ScalarField& f, ParamPoint p, int a, int b, double h) {
  double sum = 0.0;
  for (int i = 0; i <= a; ++i) {
    for (int j = 0; j <= b; ++j) {
      const double w = ((i + j) % 2 == 0 ? 1.0 : -1.0) * binomial(a, i) * binomial(b, j);
      sum += w * f({p.s + (0.5 * a - i) * h, p.t + (0.5 * b - j) * h});
    }
  }
  return sum / std::pow(h, a + b);
}

Intrinsic intrinsic(const SurfaceDef& surface, ParamPoint p) {
  const JetVec4 x = immersion_jets(surface, p, Jet::kDefaultOrder);
  const std::array<JetVec4, 2> dx{
      JetVec4{d(x.x0, kS), d(x.x1, kS), d(x.x2, kS), d(x.x3, kS)},
      JetVec4{d(x.x0, kT), d(x.x1, kT), d(x.x2, kT), d(x.x3, kT)}};
  std::array<std::array<Jet, 2>, 2> g;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) g[i][j] = inner4(dx[i], dx[j]);
  }
  const Jet det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  const std::array<std::array<Jet, 2>, 2> ginv{
      {{g[1][1] / det, -g[0][1] / det}, {-g[1][0] / det, g[0][0] / det}}};

  // Gamma^l_ij = g^{lk} (d_i g_jk + d_j g_ik - d_k g_ij) / 2
  Jet G[2][2][2];
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Jet acc = Jet::constant(0.0, p, det.order() - 1);
        for (int k = 0; k < 2; ++k) {
          const Jet low = 0.5 * (d(g[j][k], i) + d(g[i][k], j) - d(g[i][j], k));
          acc = acc + ginv[l][k] * low;
        }
        G[l][i][j] = acc;
      }
    }
  }

  // R^l_{t s t} for R(d_s, d_t) d_t = R^l_{tst} d_l.
  std::array<Jet, 2> R;
  for (int l = 0; l < 2; ++l) {
    Jet r = d(G[l][kT][kT], kS) - d(G[l][kS][kT], kT);
    for (int m = 0; m < 2; ++m) {
      r = r + G[l][kS][m] * G[m][kT][kT] - G[l][kT][m] * G[m][kS][kT];
    }
    R[l] = r;
  }
  const double R_stts = g[kS][kS].value() * R[kS].value() + g[kS][kT].value() * R[kT].value();

  Intrinsic out;
  out.g = {g[0][0].value(), g[0][1].value(), g[1][1].value(), det.value()};
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) out.gamma[l][i][j] = G[l][i][j].value();
    }
  }
  out.K = -R_stts / out.g.det;
  return out;
}

double wedge_normal_curvature(const FramePoint& fp) {
  return inner6(wedge(fp.h11, fp.h22), wedge(fp.e3, fp.e4));
}

Jet frame_laplacian(const Jet& phi, const JetFrame& frame) {
  const Jet f1phi = frame_derivative(phi, frame, 0);
  const Jet f2phi = frame_derivative(phi, frame, 1);
  const Jet f1f2phi = frame_derivative(f2phi, frame, 0);
  const Jet f2f1phi = frame_derivative(f1phi, frame, 1);
  // Tangential part of D_X Y applied to phi.
  auto connection = [&](const JetVec4& Y, int along) {
    const JetVec4 v = directional(Y, frame.frame_coords[static_cast<std::size_t>(along)]);
    const Jet as = inner4(v, frame.x_s), at = inner4(v, frame.x_t);
    const Jet cs = frame.ginv_ss * as + frame.ginv_st * at;
    const Jet ct = frame.ginv_st * as + frame.ginv_tt * at;
    return cs * phi.derivative(Var::s) + ct * phi.derivative(Var::t);
  };
  return f1f2phi + f2f1phi - connection(frame.f2, 0) - connection(frame.f1, 1);
}

double null_chart_laplacian(const Jet& phi, const JetFrame& frame) {
  const double m2 = -frame.g_st.value();
  return 2.0 / m2 * phi.partial(1, 1);
}

double fd_laplacian(const ScalarField& f, const SurfaceDef& surface,
                    ParamPoint p, double h) {
  const Intrinsic in = intrinsic(surface, p);
  const double det = in.g.det;
  const double ginv[2][2] = {{in.g.g_tt / det, -in.g.g_st / det},
                             {-in.g.g_st / det, in.g.g_ss / det}};
  const double grad[2] = {fd_partial(f, p, 1, 0, h), fd_partial(f, p, 0, 1, h)};
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const int a = (i == kS) + (j == kS), b = (i == kT) + (j == kT);
      double hess = fd_partial(f, p, a, b, h);
      for (int k = 0; k < 2; ++k) hess -= in.gamma[k][i][j] * grad[k];
      sum += ginv[i][j] * hess;
    }
  }
  return -sum;
}

Vec4 fd_gradient(const ScalarField& f, const SurfaceDef& surface, ParamPoint p,
                 double h) {
  const Intrinsic in = intrinsic(surface, p);
  const JetVec4 x = immersion_jets(surface, p, 1);
  const Vec4 xs{x.x0.coeff(1, 0), x.x1.coeff(1, 0), x.x2.coeff(1, 0), x.x3.coeff(1, 0)};
  const Vec4 xt{x.x0.coeff(0, 1), x.x1.coeff(0, 1), x.x2.coeff(0, 1), x.x3.coeff(0, 1)};
  const double det = in.g.det;
  const double fs = fd_partial(f, p, 1, 0, h), ft = fd_partial(f, p, 0, 1, h);
  const double cs = (in.g.g_tt * fs - in.g.g_st * ft) / det;
  const double ct = (-in.g.g_st * fs + in.g.g_ss * ft) / det;
  return xs * cs + xt * ct;
}

int rank_by_minors(const Vec4& u, const Vec4& v, double tol) {
  double biggest = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      biggest = std::max(biggest, std::abs(u[i] * v[j] - u[j] * v[i]));
    }
  }
  const double nu = euclidean_norm(u), nv = euclidean_norm(v);
  if (biggest > tol * nu * nv) return 2;
  return nu > 0.0 || nv > 0.0 ? 1 : 0;
}

int radical_dimension(std::span<const Vec4> basis, double tol) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  if (k == 0) return 0;
  Eigen::MatrixXd B(4, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Vec4& b = basis[static_cast<std::size_t>(c)];
    const double n = euclidean_norm(b);
    for (int r = 0; r < 4; ++r) B(r, c) = b[r] / n;
  }
  // U^perp is the kernel of B^T eta.
  Eigen::MatrixXd BtEta = B.transpose();
  BtEta.col(0) *= -1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(BtEta);
  lu.setThreshold(tol);
  const Eigen::MatrixXd N = lu.kernel();
  const bool trivial_kernel = lu.rank() == 4;

  auto rank = [&](const Eigen::MatrixXd& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> r(m);
    r.setThreshold(tol);
    return static_cast<int>(r.rank());
  };
  const int rank_u = rank(B);
  if (trivial_kernel) return 0;
  const int dim_perp = static_cast<int>(N.cols());
  Eigen::MatrixXd joint(4, B.cols() + N.cols());
  joint << B, N;
  return rank_u + dim_perp - rank(joint);
}

int relative_null_dimension(const FramePoint& fp, double tol) {
  const auto& h = fp.h;
  const Vec4 c1{h.h3_11, h.h4_11, h.h3_12, h.h4_12};
  const Vec4 c2{h.h3_12, h.h4_12, h.h3_22, h.h4_22};
  const double scale = std::max({1.0, euclidean_norm(c1), euclidean_norm(c2)});
  double biggest = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      biggest = std::max(biggest, std::abs(c1[i] * c2[j] - c1[j] * c2[i]));
    }
  }
  if (biggest > tol * scale * scale) return 0;
  const double entry = std::max(euclidean_norm(c1), euclidean_norm(c2));
  return entry > tol * scale ? 1 : 2;
}

}  // namespace minkgauss::oracle
