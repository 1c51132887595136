#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "minkgauss/expr.hpp"
#include "minkgauss/mink.hpp"

namespace minkgauss {

struct Domain {
  double s_min = -0.8, s_max = 0.8;
  double t_min = -0.8, t_max = 0.8;

  bool contains(ParamPoint p) const noexcept {
    return p.s >= s_min && p.s <= s_max && p.t >= t_min && p.t <= t_max;
  }
  friend bool operator==(const Domain&, const Domain&) = default;
};

// An immersion x(s,t) = (x0, x1, x2, x3) given by expressions, with its
// parameter rectangle and bound parameters.
struct SurfaceDef {
  std::string name;
  std::array<Expr, 4> components{Expr::number(0), Expr::number(0),
                                 Expr::number(0), Expr::number(0)};
  Domain domain;
  ParamMap params;
};

// Checks the SurfaceDef invariants (bound parameters, nonempty domain);
// throws ValidationError naming the violated one.
void validate(const SurfaceDef& def);

// Surface-definition text format:
//
//   # comment
//   name   = <text>
//   x0     = <expr>        (x1, x2, x3 likewise)
//   domain = s_min s_max t_min t_max
//   param <name> = <real>  (repeatable)
SurfaceDef parse_surface(std::string_view text);
SurfaceDef load_surface(const std::filesystem::path& file);
std::string format_surface(const SurfaceDef& def);

// Immersion components as jets at a point.
JetVec4 immersion_jets(const SurfaceDef& def, ParamPoint p,
                       int order = Jet::kDefaultOrder);
Vec4 immersion_value(const SurfaceDef& def, ParamPoint p);

}  // namespace minkgauss
