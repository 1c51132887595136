#pragma once

// Independent reference computations used only by tests and `verify`. None
// of these share a code path with the engine beyond immersion evaluation.

#include <array>
#include <functional>
#include <span>

#include "minkgauss/frame.hpp"
#include "minkgauss/surface.hpp"

namespace minkgauss::oracle {

using ScalarField = std::function<double(ParamPoint)>;

// Central-difference estimate of d^a/ds^a d^b/dt^b f, second order in h.
double fd_partial(const ScalarField& f, ParamPoint p, int a, int b, double h);

// Metric, Christoffel symbols (from metric derivatives) and Gaussian
// curvature K = -R_stts / det g, all from the immersion jets alone.
struct Intrinsic {
  Metric g;
  Christoffel gamma{};
  double K = 0;
};
Intrinsic intrinsic(const SurfaceDef& surface, ParamPoint p);

// Normal curvature as the e3^e4 coefficient of h(f1,f1) ^ h(f2,f2).
double wedge_normal_curvature(const FramePoint& fp);

// Laplacian through the null frame:
// f1 f2 phi + f2 f1 phi - (nabla_{f1} f2) phi - (nabla_{f2} f1) phi.
Jet frame_laplacian(const Jet& phi, const JetFrame& frame);

// (2 / m^2) d_s d_t phi for a chart with g_ss = g_tt = 0, g_st = -m^2.
double null_chart_laplacian(const Jet& phi, const JetFrame& frame);

// Coordinate Laplacian of a scalar field by finite differences, with metric
// data from intrinsic().
double fd_laplacian(const ScalarField& f, const SurfaceDef& surface,
                    ParamPoint p, double h);

// grad phi as an ambient vector, from finite-difference partials of phi.
Vec4 fd_gradient(const ScalarField& f, const SurfaceDef& surface, ParamPoint p,
                 double h);

// Rank of the 4x2 matrix [u v] from its 2x2 minors.
int rank_by_minors(const Vec4& u, const Vec4& v, double tol);

// dim(U cap U^perp) for U = span(basis), from explicit null-space bases.
int radical_dimension(std::span<const Vec4> basis, double tol = 1e-9);

// Dimension of {X : h(X, .) = 0} from brute-force minors of the h-matrix.
int relative_null_dimension(const FramePoint& fp, double tol);

}  // namespace minkgauss::oracle
