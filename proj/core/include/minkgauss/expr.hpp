#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "minkgauss/jet.hpp"

namespace minkgauss {

using ParamMap = std::map<std::string, double, std::less<>>;

enum class Func { sin, cos, sinh, cosh, exp, sqrt, log };

std::optional<Func> function_from_name(std::string_view name) noexcept;
std::string_view function_name(Func f) noexcept;

// Immutable expression tree over s, t, named parameters, + - * / ^ and the
// functions in Func. Copies share structure.
class Expr {
 public:
  enum class Kind { Number, Variable, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

  static Expr number(double v);
  static Expr variable(Var v);
  static Expr param(std::string name);
  static Expr neg(Expr operand);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr call(Func f, Expr arg);

  Kind kind() const noexcept;
  double number() const;
  Var variable() const;
  const std::string& name() const;
  Func func() const;
  // Operand of Neg and Call, left operand of binary nodes.
  const Expr& lhs() const;
  const Expr& rhs() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);

// Precedence: ^ (right-assoc) > unary minus > * / > + - (left-assoc).
Expr parse(std::string_view text);

// Text that reparses to a structurally identical tree. Literals are written
// in shortest round-trip form.
std::string format(const Expr& e);

// Parameter names referenced by e (s and t excluded).
std::set<std::string> identifiers(const Expr& e);
bool depends_on(const Expr& e, Var v);

double eval_real(const Expr& e, ParamPoint point, const ParamMap& params);
Jet eval_jet(const Expr& e, ParamPoint point, const ParamMap& params,
             int order = Jet::kDefaultOrder);

}  // namespace minkgauss
