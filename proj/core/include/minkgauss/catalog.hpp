#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "minkgauss/surface.hpp"

namespace minkgauss {

using Curve = std::array<Expr, 4>;

// Null curves are sampled on a 1-D grid this many times finer than the
// default analysis grid when checking generator preconditions.
inline constexpr int kCurveSamples = 161;
inline constexpr double kNullCurveTol = 1e-10;
inline constexpr double kPairingFloor = 1e-3;

// x(s,t) = s eta0 + beta(t) with eta0 and beta' lightlike and <eta0, beta'>
// bounded away from zero on the t-range.
SurfaceDef degenerate_null_surface(const Vec4& eta0, const Curve& beta,
                                   const Domain& domain,
                                   std::string name = "degenerate-null");

// Translation surface x(s,t) = phi(s) + psi(t) of two null curves; minimal
// because x_st = 0.
SurfaceDef null_translation(const Curve& phi, const Curve& psi,
                            const Domain& domain,
                            std::string name = "null-translation",
                            ParamMap params = {});

// Random polynomial null curves from the identity
// (a^2+b^2+c^2+d^2)^2 = (a^2+b^2-c^2-d^2)^2 + (2(ac+bd))^2 + (2(ad-bc))^2
// with linear a, b, c, d; deterministic in the seed.
SurfaceDef random_null_translation(std::uint64_t seed,
                                   const Domain& domain = Domain{});

// Plane, non-minimal graph and a Riemannian graph (rejected by frame_at).
std::vector<SurfaceDef> control_surfaces();

// The three canonical minimal surfaces: degenerate-null, null-translation
// and hyperplane-minimal.
std::vector<SurfaceDef> minimal_catalog();

std::vector<std::string> catalog_names();
// Throws UnknownSurface for names outside catalog_names().
SurfaceDef catalog_surface(std::string_view name);

}  // namespace minkgauss
