#include "minkgauss/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <variant>
#include <vector>

#include "minkgauss/error.hpp"

namespace minkgauss {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"sinh", Func::sinh},
    {"cosh", Func::cosh},
    {"exp", Func::exp},
    {"sqrt", Func::sqrt},
    {"log", Func::log},
}};

}  // namespace

std::optional<Func> function_from_name(std::string_view name) noexcept {
  for (const auto& [n, f] : kFunctions) {
    if (n == name) return f;
  }
  return std::nullopt;
}

std::string_view function_name(Func f) noexcept {
  for (const auto& [n, g] : kFunctions) {
    if (g == f) return n;
  }
  return "?";
}

struct Expr::Node {
  Kind kind;
  double number = 0.0;
  Var var = Var::s;
  Func func = Func::sin;
  std::string name;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
};

Expr Expr::number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->number = v;
  return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = v;
  return Expr(std::move(n));
}

Expr Expr::param(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Param;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::neg(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = f;
  n->lhs = std::move(arg);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::number() const { return node_->number; }
Var Expr::variable() const { return node_->var; }
const std::string& Expr::name() const { return node_->name; }
Func Expr::func() const { return node_->func; }
const Expr& Expr::lhs() const { return *node_->lhs; }
const Expr& Expr::rhs() const { return *node_->rhs; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Number:
      return a.number() == b.number();
    case Expr::Kind::Variable:
      return a.variable() == b.variable();
    case Expr::Kind::Param:
      return a.name() == b.name();
    case Expr::Kind::Neg:
      return a.lhs() == b.lhs();
    case Expr::Kind::Call:
      return a.func() == b.func() && a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Expr operator+(Expr a, Expr b) {
  return Expr::binary(Expr::Kind::Add, std::move(a), std::move(b));
}
Expr operator-(Expr a, Expr b) {
  return Expr::binary(Expr::Kind::Sub, std::move(a), std::move(b));
}
Expr operator*(Expr a, Expr b) {
  return Expr::binary(Expr::Kind::Mul, std::move(a), std::move(b));
}
Expr operator/(Expr a, Expr b) {
  return Expr::binary(Expr::Kind::Div, std::move(a), std::move(b));
}
Expr operator-(Expr a) { return Expr::neg(std::move(a)); }

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

const std::vector<std::string> kOperandStart{"number", "identifier", "'('",
                                             "'-'"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  Expr parse_all() {
    Expr e = parse_sum();
    if (tok_.kind != Tok::End) {
      fail({"operator", "')'", "end of input"});
    }
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::ostringstream msg;
    msg << "syntax error at offset " << tok_.offset << ": ";
    if (tok_.kind == Tok::End) {
      msg << "unexpected end of input";
    } else {
      msg << "unexpected '" << tok_.text << "'";
    }
    msg << ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      msg << (i == 0 ? "" : i + 1 == expected.size() ? " or " : ", ")
          << expected[i];
    }
    throw SyntaxError(tok_.offset, std::move(expected), msg.str());
  }

  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, start, {}};
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number(start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      tok_ = {Tok::Ident, start, text_.substr(start, pos_ - start)};
      return;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default: {
        tok_ = {Tok::End, start, text_.substr(start, 1)};
        std::ostringstream msg;
        msg << "syntax error at offset " << start << ": invalid character '"
            << c << "'";
        throw SyntaxError(start, kOperandStart, msg.str());
      }
    }
    ++pos_;
    tok_ = {kind, start, text_.substr(start, 1)};
  }

  void lex_number(std::size_t start) {
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      tok_ = {Tok::Number, start, text_.substr(start, pos_ - start)};
      fail({"digit"});
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        ++pos_;
      }
      if (digits() == 0) pos_ = mark;  // "2e" is 2 followed by identifier e
    }
    Token t{Tok::Number, start, text_.substr(start, pos_ - start)};
    const auto [ptr, ec] =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      tok_ = t;
      fail({"number"});
    }
    tok_ = t;
  }

  Expr parse_sum() {
    Expr e = parse_product();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const auto kind = tok_.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      advance();
      e = Expr::binary(kind, std::move(e), parse_product());
    }
    return e;
  }

  Expr parse_product() {
    Expr e = parse_unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const auto kind = tok_.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div;
      advance();
      e = Expr::binary(kind, std::move(e), parse_unary());
    }
    return e;
  }

  Expr parse_unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return Expr::neg(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (tok_.kind == Tok::Caret) {
      advance();
      return Expr::binary(Expr::Kind::Pow, std::move(base), parse_unary());
    }
    return base;
  }

  Expr parse_primary() {
    switch (tok_.kind) {
      case Tok::Number: {
        const double v = tok_.number;
        advance();
        return Expr::number(v);
      }
      case Tok::Ident: {
        const Token id = tok_;
        advance();
        if (tok_.kind == Tok::LParen) {
          const auto f = function_from_name(id.text);
          if (!f) {
            std::ostringstream msg;
            msg << "unknown function '" << id.text << "' at offset "
                << id.offset;
            throw Error(ErrorCode::UnknownFunction, msg.str());
          }
          advance();
          Expr arg = parse_sum();
          expect_rparen();
          return Expr::call(*f, std::move(arg));
        }
        if (id.text == "s") return Expr::variable(Var::s);
        if (id.text == "t") return Expr::variable(Var::t);
        return Expr::param(std::string(id.text));
      }
      case Tok::LParen: {
        advance();
        Expr e = parse_sum();
        expect_rparen();
        return e;
      }
      default:
        fail(kOperandStart);
    }
  }

  void expect_rparen() {
    if (tok_.kind != Tok::RParen) fail({"operator", "')'"});
    advance();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, 0, {}};
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Formatting

namespace {

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), std::abs(v));
  std::string s(buf.data(), ptr);
  // A literal is lexed without sign or leading exponent-less forms like
  // "inf"; negative values only arise from hand-built trees.
  if (std::signbit(v)) return "(-" + s + ")";
  return s;
}

void format_into(const Expr& e, int min_prec, std::string& out) {
  const int prec = precedence(e.kind());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.kind()) {
    case Expr::Kind::Number:
      out += format_number(e.number());
      break;
    case Expr::Kind::Variable:
      out += e.variable() == Var::s ? 's' : 't';
      break;
    case Expr::Kind::Param:
      out += e.name();
      break;
    case Expr::Kind::Neg:
      out += '-';
      format_into(e.lhs(), 3, out);
      break;
    case Expr::Kind::Call:
      out += function_name(e.func());
      out += '(';
      format_into(e.lhs(), 0, out);
      out += ')';
      break;
    case Expr::Kind::Pow:
      format_into(e.lhs(), 5, out);
      out += '^';
      format_into(e.rhs(), 3, out);
      break;
    default: {
      const char* op = e.kind() == Expr::Kind::Add   ? " + "
                       : e.kind() == Expr::Kind::Sub ? " - "
                       : e.kind() == Expr::Kind::Mul ? "*"
                                                     : "/";
      format_into(e.lhs(), prec, out);
      out += op;
      format_into(e.rhs(), prec + 1, out);
    }
  }
  if (parens) out += ')';
}

void collect(const Expr& e, std::set<std::string>& names, bool& s, bool& t) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return;
    case Expr::Kind::Variable:
      (e.variable() == Var::s ? s : t) = true;
      return;
    case Expr::Kind::Param:
      names.insert(e.name());
      return;
    case Expr::Kind::Neg:
    case Expr::Kind::Call:
      collect(e.lhs(), names, s, t);
      return;
    default:
      collect(e.lhs(), names, s, t);
      collect(e.rhs(), names, s, t);
  }
}

}  // namespace

std::string format(const Expr& e) {
  std::string out;
  format_into(e, 0, out);
  return out;
}

std::set<std::string> identifiers(const Expr& e) {
  std::set<std::string> names;
  bool s = false, t = false;
  collect(e, names, s, t);
  return names;
}

bool depends_on(const Expr& e, Var v) {
  std::set<std::string> names;
  bool s = false, t = false;
  collect(e, names, s, t);
  return v == Var::s ? s : t;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double lookup(const Expr& e, const ParamMap& params) {
  const auto it = params.find(e.name());
  if (it == params.end()) {
    throw Error(ErrorCode::UnboundIdentifier,
                "unbound identifier '" + e.name() + "'");
  }
  return it->second;
}

int integer_exponent(const Expr& pow_node, ParamPoint point,
                     const ParamMap& params) {
  const Expr& ex = pow_node.rhs();
  if (depends_on(ex, Var::s) || depends_on(ex, Var::t)) {
    throw Error(ErrorCode::NonIntegerExponent,
                "exponent of '" + format(pow_node) +
                    "' depends on s or t; only constant integer exponents "
                    "are supported");
  }
  const double v = eval_real(ex, point, params);
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-12 * std::max(1.0, std::abs(v)) ||
      std::abs(r) > 1e6) {
    std::ostringstream msg;
    msg << "exponent of '" << format(pow_node) << "' evaluates to " << v
        << ", not an integer";
    throw Error(ErrorCode::NonIntegerExponent, msg.str());
  }
  return static_cast<int>(r);
}

template <class T>
T apply(Func f, const T& x) {
  using std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh,
      std::sqrt;
  switch (f) {
    case Func::sin: return sin(x);
    case Func::cos: return cos(x);
    case Func::sinh: return sinh(x);
    case Func::cosh: return cosh(x);
    case Func::exp: return exp(x);
    case Func::sqrt: return sqrt(x);
    case Func::log: return log(x);
  }
  return x;
}

// Wraps an error raised by node e itself (not by its children) with the
// offending subexpression.
[[noreturn]] void rethrow_at(const Expr& e, const Error& err) {
  throw Error(err.code(), std::string(err.what()) + " in '" + format(e) + "'");
}

struct JetEval {
  ParamPoint point;
  const ParamMap& params;
  int order;

  Jet operator()(const Expr& e) const {
    switch (e.kind()) {
      case Expr::Kind::Number:
        return Jet::constant(e.number(), point, order);
      case Expr::Kind::Variable:
        return Jet::variable(e.variable(), point, order);
      case Expr::Kind::Param:
        return Jet::constant(lookup(e, params), point, order);
      case Expr::Kind::Neg:
        return -(*this)(e.lhs());
      case Expr::Kind::Add:
        return (*this)(e.lhs()) + (*this)(e.rhs());
      case Expr::Kind::Sub:
        return (*this)(e.lhs()) - (*this)(e.rhs());
      case Expr::Kind::Mul:
        return (*this)(e.lhs()) * (*this)(e.rhs());
      case Expr::Kind::Div: {
        const Jet a = (*this)(e.lhs());
        const Jet b = (*this)(e.rhs());
        try {
          return a / b;
        } catch (const Error& err) {
          rethrow_at(e, err);
        }
      }
      case Expr::Kind::Pow: {
        const Jet a = (*this)(e.lhs());
        const int n = integer_exponent(e, point, params);
        try {
          return pow(a, n);
        } catch (const Error& err) {
          rethrow_at(e, err);
        }
      }
      case Expr::Kind::Call: {
        const Jet a = (*this)(e.lhs());
        try {
          return apply(e.func(), a);
        } catch (const Error& err) {
          rethrow_at(e, err);
        }
      }
    }
    return Jet::constant(0.0, point, order);
  }
};

}  // namespace

double eval_real(const Expr& e, ParamPoint point, const ParamMap& params) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return e.number();
    case Expr::Kind::Variable:
      return e.variable() == Var::s ? point.s : point.t;
    case Expr::Kind::Param:
      return lookup(e, params);
    case Expr::Kind::Neg:
      return -eval_real(e.lhs(), point, params);
    case Expr::Kind::Add:
      return eval_real(e.lhs(), point, params) + eval_real(e.rhs(), point, params);
    case Expr::Kind::Sub:
      return eval_real(e.lhs(), point, params) - eval_real(e.rhs(), point, params);
    case Expr::Kind::Mul:
      return eval_real(e.lhs(), point, params) * eval_real(e.rhs(), point, params);
    case Expr::Kind::Div: {
      const double a = eval_real(e.lhs(), point, params);
      const double b = eval_real(e.rhs(), point, params);
      if (b == 0.0) {
        throw Error(ErrorCode::DivisionNearZero,
                    "division by zero in '" + format(e) + "'");
      }
      return a / b;
    }
    case Expr::Kind::Pow: {
      const double a = eval_real(e.lhs(), point, params);
      return std::pow(a, integer_exponent(e, point, params));
    }
    case Expr::Kind::Call: {
      const double a = eval_real(e.lhs(), point, params);
      if ((e.func() == Func::sqrt || e.func() == Func::log) && !(a > 0.0) &&
          !(e.func() == Func::sqrt && a == 0.0)) {
        std::ostringstream msg;
        msg << function_name(e.func()) << " of non-positive value " << a
            << " in '" << format(e) << "'";
        throw Error(ErrorCode::DomainError, msg.str());
      }
      return apply(e.func(), a);
    }
  }
  return 0.0;
}

Jet eval_jet(const Expr& e, ParamPoint point, const ParamMap& params,
             int order) {
  return JetEval{point, params, order}(e);
}

}  // namespace minkgauss
