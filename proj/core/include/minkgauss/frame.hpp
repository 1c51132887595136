#pragma once

#include <array>
#include <optional>
#include <utility>

#include "minkgauss/jet.hpp"
#include "minkgauss/mink.hpp"
#include "minkgauss/surface.hpp"

namespace minkgauss {

// Coordinate index for s and t in metric, Christoffel and frame arrays.
inline constexpr int kS = 0;
inline constexpr int kT = 1;

using Mat2 = std::array<std::array<double, 2>, 2>;

struct Metric {
  double g_ss = 0, g_st = 0, g_tt = 0;
  double det = 0;
};

// Gamma^k_ij, stored at [k][i][j]; symmetric in (i, j).
using Christoffel = std::array<std::array<std::array<double, 2>, 2>, 2>;

// Components h^alpha_ab = <h(f_a, f_b), e_alpha> in the null frame.
struct SecondFundamentalForm {
  double h3_11 = 0, h3_12 = 0, h3_22 = 0;
  double h4_11 = 0, h4_12 = 0, h4_22 = 0;
};

// Pointwise geometric data of a Lorentzian surface. The tangent frame is
// null with <f1,f2> = -1; the normal frame is orthonormal and spacelike with
// det(f1, f2, e3, e4) > 0.
struct FramePoint {
  ParamPoint point;
  Vec4 x, x_s, x_t;
  Metric g;
  Christoffel christoffel{};
  Vec4 f1, f2;
  // Coordinate coefficients: f_a = F[a][0] d/ds + F[a][1] d/dt.
  std::array<std::array<double, 2>, 2> frame_coords{};
  Vec4 e3, e4;
  SecondFundamentalForm h;
  Vec4 h11, h12, h22;  // h(f1,f1), h(f1,f2), h(f2,f2) as ambient vectors
  Vec4 H;
  double K = 0;
  double KD = 0;
  Biv6 nu, mu;
};

// Every FramePoint quantity as a jet about the point, so that fields built
// from the frame can be differentiated. With immersion jets of order n the
// frame vectors and Gauss maps carry order n-1 and the second fundamental
// form, K and K^D carry order n-2.
struct JetFrame {
  ParamPoint point;
  int order = Jet::kDefaultOrder;

  JetVec4 x, x_s, x_t, x_ss, x_st, x_tt;
  Jet g_ss, g_st, g_tt, det_g;
  Jet ginv_ss, ginv_st, ginv_tt;
  std::array<Jet, 8> gamma;  // Gamma^k_ij at index 4k + 2i + j
  std::array<std::array<Jet, 2>, 2> frame_coords;
  JetVec4 f1, f2, e3, e4;
  JetVec4 h_ss, h_st, h_tt;  // h(d_i, d_j)
  JetVec4 h11, h12, h22;     // h(f_a, f_b)
  Jet K, KD;
  JetBiv6 nu, mu;

  const Jet& christoffel(int k, int i, int j) const {
    return gamma[static_cast<std::size_t>(4 * k + 2 * i + j)];
  }
  const Jet& ginv(int i, int j) const {
    return i == kS ? (j == kS ? ginv_ss : ginv_st)
                   : (j == kS ? ginv_st : ginv_tt);
  }

  FramePoint values() const;
};

inline constexpr double kLorentzTol = 1e-9;

JetFrame build_frame(const SurfaceDef& surface, ParamPoint point,
                     int order = Jet::kDefaultOrder);
FramePoint frame_at(const SurfaceDef& surface, ParamPoint point);

// A_xi in the (f1, f2) basis; column j is the image of f_j.
Mat2 shape_operator(const FramePoint& fp, const Vec4& xi);

// Gauss equation: <h(f2,f2), h(f1,f1)> - <h(f1,f2), h(f1,f2)>.
double gaussian_curvature(const FramePoint& fp);
// Ricci equation: <[A_e3, A_e4] f1, f2>.
double normal_curvature(const FramePoint& fp);
std::pair<Biv6, Biv6> gauss_maps(const FramePoint& fp);

// Jets of the six Plucker components of nu, order 4 for a default frame.
JetBiv6 nu_field(const SurfaceDef& surface, ParamPoint point);

// Delta phi = -g^{ij}(d_i d_j phi - Gamma^k_ij d_k phi); consumes two orders.
Jet laplacian(const Jet& phi, const JetFrame& frame);
JetBiv6 laplacian(const JetBiv6& field, const JetFrame& frame);

// Directional derivative f_a(phi) of a scalar jet; one order lower.
Jet frame_derivative(const Jet& phi, const JetFrame& frame, int a);

// Coordinate components of grad phi = -f1(phi) f2 - f2(phi) f1.
std::array<Jet, 2> gradient_coords(const Jet& phi, const JetFrame& frame);
// grad phi as an ambient tangent vector at the base point.
Vec4 gradient(const Jet& phi, const JetFrame& frame);

// Derivative of a field along the coordinate vector X = X^s d_s + X^t d_t.
JetBiv6 directional(const JetBiv6& field, const std::array<Jet, 2>& X);
JetVec4 directional(const JetVec4& field, const std::array<Jet, 2>& X);

// Normal part of an ambient vector field.
JetVec4 normal_part(const JetVec4& v, const JetFrame& frame);

struct CodazziResidual {
  // max |T(f1, f2, f_c)^alpha| of T(X,Y,Z) = (nabla_X h)(Y,Z) - (nabla_Y h)(X,Z)
  double general = 0;
  // |D_f2 h(f1,f1) - 2 zeta2 h(f1,f1)| and |D_f1 h(f2,f2) + 2 zeta1 h(f2,f2)|,
  // which vanish on minimal surfaces.
  double minimal_f2 = 0;
  double minimal_f1 = 0;
  double zeta1 = 0, zeta2 = 0;
};

CodazziResidual codazzi_residual(const JetFrame& frame);

// Connection coefficients zeta_i with nabla_{f_i} f1 = zeta_i f1.
std::array<double, 2> connection_zeta(const JetFrame& frame);

struct RelativeNullSpace {
  int dimension = 0;
  bool degenerate = false;
  std::optional<Vec4> generator;
  double sigma_min = 0;  // smallest singular value of X -> (h(X,f1), h(X,f2))
};

RelativeNullSpace relative_null_space(const FramePoint& fp,
                                      double tol = 1e-10);

}  // namespace minkgauss
