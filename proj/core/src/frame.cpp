#include "minkgauss/frame.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "minkgauss/error.hpp"

namespace minkgauss {

namespace {

// Ties closer than this between the d/ds coefficients of the two unit null
// directions fall back to the d/dt tie-break.
constexpr double kLabelTieTol = 1e-9;

JetVec4 d(const JetVec4& v, Var w) {
  return {v.x0.derivative(w), v.x1.derivative(w), v.x2.derivative(w),
          v.x3.derivative(w)};
}

double euclid_jet_norm_sq_value(const JetVec4& v) {
  return euclidean_dot(values(v), values(v));
}

Jet euclid_norm(const JetVec4& v) {
  return sqrt(v.x0 * v.x0 + v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3);
}

JetVec4 combine(const Jet& a, const JetVec4& u, const Jet& b,
                const JetVec4& v) {
  return u * a + v * b;
}

std::string where(ParamPoint p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.s << ", " << p.t << ")";
  return os.str();
}

struct NullDirection {
  Jet a, b;  // unit coordinate direction a d/ds + b d/dt
};

// The two null directions of g_ss a^2 + 2 g_st ab + g_tt b^2, written in a
// cancellation-free form: with q = -(g_st + sign(g_st) sqrt(-det g)), the
// directions are (q, g_ss) and (g_tt, q), both nonzero since |q| >= sqrt(-det).
std::pair<NullDirection, NullDirection> null_directions(const JetFrame& f) {
  const double sigma = f.g_st.value() >= 0.0 ? 1.0 : -1.0;
  const Jet root = sqrt(-f.det_g);
  const Jet q = -(f.g_st + sigma * root);
  std::array<NullDirection, 2> dirs{NullDirection{q, f.g_ss},
                                    NullDirection{f.g_tt, q}};
  for (auto& dir : dirs) {
    const Jet n = sqrt(dir.a * dir.a + dir.b * dir.b);
    dir.a = dir.a / n;
    dir.b = dir.b / n;
    const bool flip = std::abs(dir.a.value()) > 1e-12 ? dir.a.value() < 0.0
                                                      : dir.b.value() < 0.0;
    if (flip) {
      dir.a = -dir.a;
      dir.b = -dir.b;
    }
  }
  const double da = dirs[0].a.value() - dirs[1].a.value();
  bool first_is_f1;
  if (std::abs(da) > kLabelTieTol) {
    first_is_f1 = da > 0.0;
  } else {
    // Labels are tied at the base point; if the tie does not persist to first
    // order the labelling flips inside every neighbourhood.
    const Jet diff = dirs[0].a - dirs[1].a;
    if (diff.order() >= 1 && std::abs(diff.coeff(1, 0)) + std::abs(diff.coeff(0, 1)) >
                                 kLabelTieTol) {
      throw Error(ErrorCode::FrameBranchSwitch,
                  "null-direction labelling changes branch at " +
                      where(f.point));
    }
    first_is_f1 = dirs[0].b.value() >= dirs[1].b.value();
  }
  if (first_is_f1) return {dirs[0], dirs[1]};
  return {dirs[1], dirs[0]};
}

}  // namespace

JetFrame build_frame(const SurfaceDef& surface, ParamPoint point, int order) {
  if (!surface.domain.contains(point)) {
    throw Error(ErrorCode::OutsideDomain,
                "point " + where(point) + " lies outside the surface domain");
  }
  if (order < 2) {
    throw Error(ErrorCode::OrderExhausted,
                "frame construction needs immersion jets of order >= 2");
  }
  JetFrame f;
  f.point = point;
  f.order = order;
  f.x = immersion_jets(surface, point, order);
  f.x_s = d(f.x, Var::s);
  f.x_t = d(f.x, Var::t);
  f.x_ss = d(f.x_s, Var::s);
  f.x_st = d(f.x_s, Var::t);
  f.x_tt = d(f.x_t, Var::t);

  const Vec4 xs = values(f.x_s), xt = values(f.x_t);
  const double ns2 = euclidean_dot(xs, xs), nt2 = euclidean_dot(xt, xt);
  const double area = euclidean_norm(wedge(xs, xt));
  if (ns2 == 0.0 || nt2 == 0.0 || area <= 1e-12 * std::sqrt(ns2 * nt2)) {
    throw Error(ErrorCode::DegenerateImmersion,
                "x_s and x_t are linearly dependent at " + where(point));
  }

  f.g_ss = inner4(f.x_s, f.x_s);
  f.g_st = inner4(f.x_s, f.x_t);
  f.g_tt = inner4(f.x_t, f.x_t);
  f.det_g = f.g_ss * f.g_tt - f.g_st * f.g_st;
  if (f.det_g.value() >= -kLorentzTol * ns2 * nt2) {
    std::ostringstream msg;
    msg << "induced metric is not Lorentzian at " << where(point)
        << " (det g = " << f.det_g.value() << ")";
    throw Error(ErrorCode::NotLorentzian, msg.str());
  }
  f.ginv_ss = f.g_tt / f.det_g;
  f.ginv_st = -f.g_st / f.det_g;
  f.ginv_tt = f.g_ss / f.det_g;

  // Gamma_{l,ij} = <x_ij, x_l>, raised with g^{kl}.
  const std::array<const JetVec4*, 3> second{&f.x_ss, &f.x_st, &f.x_tt};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const JetVec4& xij = *second[static_cast<std::size_t>(i + j)];
      const Jet low_s = inner4(xij, f.x_s);
      const Jet low_t = inner4(xij, f.x_t);
      f.gamma[static_cast<std::size_t>(4 * kS + 2 * i + j)] =
          f.ginv_ss * low_s + f.ginv_st * low_t;
      f.gamma[static_cast<std::size_t>(4 * kT + 2 * i + j)] =
          f.ginv_st * low_s + f.ginv_tt * low_t;
    }
  }

  // Null tangent frame, <f1,f2> = -1 and |f1|_E = |f2|_E.
  const auto [u1, u2] = null_directions(f);
  const JetVec4 X1 = combine(u1.a, f.x_s, u1.b, f.x_t);
  const JetVec4 X2 = combine(u2.a, f.x_s, u2.b, f.x_t);
  const Jet c = inner4(X1, X2);
  if (std::abs(c.value()) <= 1e-12 * std::sqrt(euclid_jet_norm_sq_value(X1) *
                                               euclid_jet_norm_sq_value(X2))) {
    throw Error(ErrorCode::NotLorentzian,
                "null directions are orthogonal at " + where(point));
  }
  const double eps = c.value() < 0.0 ? 1.0 : -1.0;
  const Jet abs_c = c * (-eps);
  const Jet n1 = euclid_norm(X1), n2 = euclid_norm(X2);
  const Jet lambda1 = eps * sqrt(n2 / (n1 * abs_c));
  const Jet lambda2 = sqrt(n1 / (n2 * abs_c));
  f.frame_coords = {{{lambda1 * u1.a, lambda1 * u1.b},
                     {lambda2 * u2.a, lambda2 * u2.b}}};
  f.f1 = combine(f.frame_coords[0][0], f.x_s, f.frame_coords[0][1], f.x_t);
  f.f2 = combine(f.frame_coords[1][0], f.x_s, f.frame_coords[1][1], f.x_t);

  // Normal frame from the projected ambient basis vector pair with the best
  // conditioned Gram matrix.
  std::array<JetVec4, 4> cand;
  for (int k = 0; k < 4; ++k) {
    JetVec4 ek;
    // <E_k, x_i> picks out one component of x_i, with the metric sign.
    const double sign = k == 0 ? -1.0 : 1.0;
    const Jet as = f.x_s[k] * sign, at = f.x_t[k] * sign;
    const Jet cs = f.ginv_ss * as + f.ginv_st * at;
    const Jet ct = f.ginv_st * as + f.ginv_tt * at;
    ek = -combine(cs, f.x_s, ct, f.x_t);
    ek[k] += 1.0;
    cand[static_cast<std::size_t>(k)] = ek;
  }
  int best_k = 0, best_l = 1;
  double best = -1.0;
  for (int k = 0; k < 4; ++k) {
    for (int l = k + 1; l < 4; ++l) {
      const Vec4 a = values(cand[static_cast<std::size_t>(k)]);
      const Vec4 b = values(cand[static_cast<std::size_t>(l)]);
      const double gd = inner4(a, a) * inner4(b, b) - inner4(a, b) * inner4(a, b);
      if (gd > best) {
        best = gd;
        best_k = k;
        best_l = l;
      }
    }
  }
  JetVec4 na = cand[static_cast<std::size_t>(best_k)];
  JetVec4 nb = cand[static_cast<std::size_t>(best_l)];
  if (det4(values(f.f1), values(f.f2), values(na), values(nb)) < 0.0) {
    nb = -nb;
  }
  std::tie(f.e3, f.e4) = orthonormalize_pair(na, nb);

  // Second fundamental form: normal part of x_ij.
  auto h_of = [&](int i, int j) {
    const JetVec4& xij = *second[static_cast<std::size_t>(i + j)];
    return xij - combine(f.christoffel(kS, i, j), f.x_s,
                         f.christoffel(kT, i, j), f.x_t);
  };
  f.h_ss = h_of(kS, kS);
  f.h_st = h_of(kS, kT);
  f.h_tt = h_of(kT, kT);
  auto h_frame = [&](int a, int b) {
    const auto& Fa = f.frame_coords[static_cast<std::size_t>(a)];
    const auto& Fb = f.frame_coords[static_cast<std::size_t>(b)];
    return f.h_ss * (Fa[0] * Fb[0]) +
           f.h_st * (Fa[0] * Fb[1] + Fa[1] * Fb[0]) +
           f.h_tt * (Fa[1] * Fb[1]);
  };
  f.h11 = h_frame(0, 0);
  f.h12 = h_frame(0, 1);
  f.h22 = h_frame(1, 1);

  f.K = inner4(f.h22, f.h11) - inner4(f.h12, f.h12);
  const Jet h3_11 = inner4(f.h11, f.e3), h4_11 = inner4(f.h11, f.e4);
  const Jet h3_22 = inner4(f.h22, f.e3), h4_22 = inner4(f.h22, f.e4);
  f.KD = h3_11 * h4_22 - h3_22 * h4_11;
  f.nu = wedge(f.f1, f.f2);
  f.mu = wedge(f.e3, f.e4);
  return f;
}

FramePoint JetFrame::values() const {
  FramePoint p;
  p.point = point;
  p.x = minkgauss::values(x);
  p.x_s = minkgauss::values(x_s);
  p.x_t = minkgauss::values(x_t);
  p.g = {g_ss.value(), g_st.value(), g_tt.value(), det_g.value()};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        p.christoffel[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                     [static_cast<std::size_t>(j)] = christoffel(k, i, j).value();
      }
    }
  }
  p.f1 = minkgauss::values(f1);
  p.f2 = minkgauss::values(f2);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t i = 0; i < 2; ++i) {
      p.frame_coords[a][i] = frame_coords[a][i].value();
    }
  }
  p.e3 = minkgauss::values(e3);
  p.e4 = minkgauss::values(e4);
  p.h11 = minkgauss::values(h11);
  p.h12 = minkgauss::values(h12);
  p.h22 = minkgauss::values(h22);
  p.h = {inner4(p.h11, p.e3), inner4(p.h12, p.e3), inner4(p.h22, p.e3),
         inner4(p.h11, p.e4), inner4(p.h12, p.e4), inner4(p.h22, p.e4)};
  p.H = -p.h12;
  p.K = K.value();
  p.KD = KD.value();
  p.nu = minkgauss::values(nu);
  p.mu = minkgauss::values(mu);
  return p;
}

FramePoint frame_at(const SurfaceDef& surface, ParamPoint point) {
  return build_frame(surface, point).values();
}

Mat2 shape_operator(const FramePoint& fp, const Vec4& xi) {
  const double nx = euclidean_norm(xi);
  for (const Vec4* f : {&fp.f1, &fp.f2}) {
    if (std::abs(inner4(xi, *f)) > 1e-10 * std::max(1.0, nx * euclidean_norm(*f))) {
      throw Error(ErrorCode::NotNormal,
                  "shape operator direction is not normal to the surface");
    }
  }
  // <A f_a, f_b> = <h(f_a, f_b), xi> with <f1,f2> = -1 gives
  // A f1 = -h12 f1 - h11 f2 and A f2 = -h22 f1 - h12 f2.
  const double a3 = inner4(fp.e3, xi), a4 = inner4(fp.e4, xi);
  const double h11 = fp.h.h3_11 * a3 + fp.h.h4_11 * a4;
  const double h12 = fp.h.h3_12 * a3 + fp.h.h4_12 * a4;
  const double h22 = fp.h.h3_22 * a3 + fp.h.h4_22 * a4;
  return {{{-h12, -h22}, {-h11, -h12}}};
}

double gaussian_curvature(const FramePoint& fp) {
  const auto& h = fp.h;
  return h.h3_22 * h.h3_11 + h.h4_22 * h.h4_11 - h.h3_12 * h.h3_12 -
         h.h4_12 * h.h4_12;
}

double normal_curvature(const FramePoint& fp) {
  const Mat2 a = shape_operator(fp, fp.e3);
  const Mat2 b = shape_operator(fp, fp.e4);
  // [A, B] f1 = c1 f1 + c2 f2 and <c1 f1 + c2 f2, f2> = -c1.
  const double c1 = a[0][0] * b[0][0] + a[0][1] * b[1][0] -
                    (b[0][0] * a[0][0] + b[0][1] * a[1][0]);
  return -c1;
}

std::pair<Biv6, Biv6> gauss_maps(const FramePoint& fp) {
  return {wedge(fp.f1, fp.f2), wedge(fp.e3, fp.e4)};
}

JetBiv6 nu_field(const SurfaceDef& surface, ParamPoint point) {
  return build_frame(surface, point).nu;
}

Jet laplacian(const Jet& phi, const JetFrame& frame) {
  if (phi.order() < 2) {
    throw Error(ErrorCode::OrderExhausted,
                "laplacian needs a jet of order >= 2, got " +
                    std::to_string(phi.order()));
  }
  const std::array<Jet, 2> grad{phi.derivative(Var::s), phi.derivative(Var::t)};
  const Jet dss = grad[0].derivative(Var::s);
  const Jet dst = grad[0].derivative(Var::t);
  const Jet dtt = grad[1].derivative(Var::t);
  auto hess = [&](int i, int j) {
    const Jet& second = (i + j == 0) ? dss : (i + j == 1) ? dst : dtt;
    return second - frame.christoffel(kS, i, j) * grad[0] -
           frame.christoffel(kT, i, j) * grad[1];
  };
  return -(frame.ginv_ss * hess(kS, kS) + 2.0 * (frame.ginv_st * hess(kS, kT)) +
           frame.ginv_tt * hess(kT, kT));
}

JetBiv6 laplacian(const JetBiv6& field, const JetFrame& frame) {
  JetBiv6 r;
  for (int i = 0; i < JetBiv6::kSize; ++i) r[i] = laplacian(field[i], frame);
  return r;
}

Jet frame_derivative(const Jet& phi, const JetFrame& frame, int a) {
  const auto& F = frame.frame_coords[static_cast<std::size_t>(a)];
  return F[0] * phi.derivative(Var::s) + F[1] * phi.derivative(Var::t);
}

std::array<Jet, 2> gradient_coords(const Jet& phi, const JetFrame& frame) {
  const Jet d1 = frame_derivative(phi, frame, 0);
  const Jet d2 = frame_derivative(phi, frame, 1);
  const auto& F1 = frame.frame_coords[0];
  const auto& F2 = frame.frame_coords[1];
  return {-(d1 * F2[0]) - d2 * F1[0], -(d1 * F2[1]) - d2 * F1[1]};
}

Vec4 gradient(const Jet& phi, const JetFrame& frame) {
  const auto X = gradient_coords(phi, frame);
  return values(frame.x_s) * X[0].value() + values(frame.x_t) * X[1].value();
}

JetBiv6 directional(const JetBiv6& field, const std::array<Jet, 2>& X) {
  JetBiv6 r;
  for (int i = 0; i < JetBiv6::kSize; ++i) {
    r[i] = X[0] * field[i].derivative(Var::s) + X[1] * field[i].derivative(Var::t);
  }
  return r;
}

JetVec4 directional(const JetVec4& field, const std::array<Jet, 2>& X) {
  JetVec4 r;
  for (int i = 0; i < 4; ++i) {
    r[i] = X[0] * field[i].derivative(Var::s) + X[1] * field[i].derivative(Var::t);
  }
  return r;
}

JetVec4 normal_part(const JetVec4& v, const JetFrame& frame) {
  const Jet as = inner4(v, frame.x_s), at = inner4(v, frame.x_t);
  const Jet cs = frame.ginv_ss * as + frame.ginv_st * at;
  const Jet ct = frame.ginv_st * as + frame.ginv_tt * at;
  return v - (frame.x_s * cs + frame.x_t * ct);
}

std::array<double, 2> connection_zeta(const JetFrame& frame) {
  std::array<double, 2> zeta{};
  for (int a = 0; a < 2; ++a) {
    const JetVec4 df1 =
        directional(frame.f1, frame.frame_coords[static_cast<std::size_t>(a)]);
    zeta[static_cast<std::size_t>(a)] = -inner4(values(df1), values(frame.f2));
  }
  return zeta;
}

CodazziResidual codazzi_residual(const JetFrame& frame) {
  CodazziResidual r;
  const std::array<std::array<const JetVec4*, 2>, 2> h{
      {{&frame.h_ss, &frame.h_st}, {&frame.h_st, &frame.h_tt}}};
  auto hij = [&](int i, int j) -> const JetVec4& {
    return *h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  // (nabla_i h)(j, k) = D_i h_jk - Gamma^l_ij h_lk - Gamma^l_ik h_jl
  auto cov = [&](int i, int j, int k) {
    const JetVec4 dh = normal_part(
        d(hij(j, k), i == kS ? Var::s : Var::t), frame);
    JetVec4 out = dh;
    for (int l = 0; l < 2; ++l) {
      out -= hij(l, k) * frame.christoffel(l, i, j);
      out -= hij(j, l) * frame.christoffel(l, i, k);
    }
    return out;
  };
  std::array<Vec4, 2> T{};
  for (int k = 0; k < 2; ++k) {
    T[static_cast<std::size_t>(k)] = values(cov(kS, kT, k)) - values(cov(kT, kS, k));
  }
  const auto& F = frame.frame_coords;
  const double detF = F[0][0].value() * F[1][1].value() -
                      F[0][1].value() * F[1][0].value();
  const Vec4 e3 = values(frame.e3), e4 = values(frame.e4);
  for (std::size_t c = 0; c < 2; ++c) {
    const Vec4 tc = (T[0] * F[c][0].value() + T[1] * F[c][1].value()) * detF;
    r.general = std::max({r.general, std::abs(inner4(tc, e3)),
                          std::abs(inner4(tc, e4))});
  }

  const auto zeta = connection_zeta(frame);
  r.zeta1 = zeta[0];
  r.zeta2 = zeta[1];
  const Vec4 a = values(normal_part(directional(frame.h11, F[1]), frame)) -
                 values(frame.h11) * (2.0 * zeta[1]);
  const Vec4 b = values(normal_part(directional(frame.h22, F[0]), frame)) +
                 values(frame.h22) * (2.0 * zeta[0]);
  r.minimal_f2 = std::hypot(inner4(a, e3), inner4(a, e4));
  r.minimal_f1 = std::hypot(inner4(b, e3), inner4(b, e4));
  return r;
}

RelativeNullSpace relative_null_space(const FramePoint& fp, double tol) {
  // Columns: images of f1 and f2 under X -> (h(X,f1), h(X,f2)) in the
  // (e3, e4) components.
  Eigen::Matrix<double, 4, 2> m;
  m << fp.h.h3_11, fp.h.h3_12,
       fp.h.h4_11, fp.h.h4_12,
       fp.h.h3_12, fp.h.h3_22,
       fp.h.h4_12, fp.h.h4_22;
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv(0));
  RelativeNullSpace r;
  r.sigma_min = sv(1);
  const int rank = (sv(0) > cut ? 1 : 0) + (sv(1) > cut ? 1 : 0);
  r.dimension = 2 - rank;
  if (r.dimension == 1) {
    const Eigen::Vector2d v = svd.matrixV().col(1);
    const Vec4 gen = fp.f1 * v(0) + fp.f2 * v(1);
    r.generator = gen;
    const std::array<Vec4, 1> basis{gen};
    r.degenerate = is_degenerate_subspace(basis);
  } else if (r.dimension == 2) {
    const std::array<Vec4, 2> basis{fp.f1, fp.f2};
    r.degenerate = is_degenerate_subspace(basis);
  }
  return r;
}

}  // namespace minkgauss
