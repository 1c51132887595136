#include "minkgauss/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "minkgauss/error.hpp"
#include "minkgauss/frame.hpp"

namespace minkgauss {

namespace {

std::vector<double> samples(double lo, double hi, int n = kCurveSamples) {
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    u[static_cast<std::size_t>(i)] =
        i == n - 1 ? hi : lo + (hi - lo) * i / static_cast<double>(n - 1);
  }
  return u;
}

void require_single_variable(const Curve& c, Var keep, const char* what) {
  const Var other = keep == Var::s ? Var::t : Var::s;
  for (std::size_t i = 0; i < 4; ++i) {
    if (depends_on(c[i], other)) {
      throw Error(ErrorCode::ValidationError,
                  std::string(what) + " component " + std::to_string(i) +
                      " must depend on " + (keep == Var::s ? "s" : "t") +
                      " only");
    }
  }
}

Vec4 tangent(const Curve& c, Var v, double u, const ParamMap& params) {
  const ParamPoint p = v == Var::s ? ParamPoint{u, 0.0} : ParamPoint{0.0, u};
  Vec4 out;
  for (int i = 0; i < 4; ++i) {
    const Jet j = eval_jet(c[static_cast<std::size_t>(i)], p, params, 1);
    out[i] = v == Var::s ? j.coeff(1, 0) : j.coeff(0, 1);
  }
  return out;
}

std::string at(const char* var, double u) {
  std::ostringstream os;
  os.precision(17);
  os << var << " = " << u;
  return os.str();
}

std::vector<Vec4> null_tangents(const Curve& c, Var v, double lo, double hi,
                                const ParamMap& params, const char* what) {
  std::vector<Vec4> out;
  for (const double u : samples(lo, hi)) {
    const Vec4 d = tangent(c, v, u, params);
    const double n2 = euclidean_dot(d, d);
    if (n2 == 0.0 || std::abs(inner4(d, d)) > kNullCurveTol * n2) {
      throw Error(ErrorCode::NotNullCurve,
                  std::string(what) + "' is not lightlike at " +
                      at(v == Var::s ? "s" : "t", u));
    }
    out.push_back(d);
  }
  return out;
}

void check_pairing(const Vec4& a, const Vec4& b, const std::string& where) {
  if (std::abs(inner4(a, b)) < kPairingFloor * euclidean_norm(a) * euclidean_norm(b)) {
    throw Error(ErrorCode::DegenerateMetric,
                "tangent directions become orthogonal at " + where);
  }
}

Expr var(Var v) { return Expr::variable(v); }
Expr num(double x) { return Expr::number(x); }

Expr power(Expr base, int k) {
  return Expr::binary(Expr::Kind::Pow, std::move(base), num(k));
}

// sum_k c[k] u^(k+1) / (k+1): the antiderivative of sum_k c[k] u^k.
Expr integrated_polynomial(const std::vector<double>& c, Var v) {
  std::optional<Expr> e;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double coeff = c[k] / static_cast<double>(k + 1);
    if (coeff == 0.0) continue;
    Expr term = k == 0 ? num(coeff) * var(v)
                       : num(coeff) * power(var(v), static_cast<int>(k + 1));
    e = e ? *e + term : term;
  }
  return e ? *e : num(0);
}

using Poly = std::vector<double>;

Poly mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly add(const Poly& a, const Poly& b, double sb = 1.0) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sb * b[i];
  return r;
}

Poly scale(Poly a, double k) {
  for (auto& x : a) x *= k;
  return a;
}

// Null curve tangent built from linear a, b, c, d; x1 carries `orient`.
std::array<Poly, 4> lebesgue_tangent(const Poly& a, const Poly& b,
                                     const Poly& c, const Poly& d,
                                     double orient) {
  const Poly aa = mul(a, a), bb = mul(b, b), cc = mul(c, c), dd = mul(d, d);
  return {add(add(aa, bb), add(cc, dd)),
          scale(add(add(aa, bb), add(cc, dd), -1.0), orient),
          scale(add(mul(a, c), mul(b, d)), 2.0),
          scale(add(mul(a, d), mul(b, c), -1.0), 2.0)};
}

SurfaceDef checked_control(SurfaceDef def) {
  const Domain& d = def.domain;
  for (const double s : samples(d.s_min, d.s_max, 17)) {
    for (const double t : samples(d.t_min, d.t_max, 17)) {
      try {
        frame_at(def, {s, t});
      } catch (const Error& e) {
        throw std::logic_error("control surface '" + def.name +
                               "' fails validation: " + e.what());
      }
    }
  }
  return def;
}

Curve parse_curve(std::array<const char*, 4> text) {
  return {parse(text[0]), parse(text[1]), parse(text[2]), parse(text[3])};
}

}  // namespace

SurfaceDef degenerate_null_surface(const Vec4& eta0, const Curve& beta,
                                   const Domain& domain, std::string name) {
  const double n = euclidean_norm(eta0);
  if (n == 0.0 || std::abs(inner4(eta0, eta0)) > kNullCurveTol * n * n) {
    throw Error(ErrorCode::NotLightlikeDirection, "eta0 is not lightlike");
  }
  require_single_variable(beta, Var::t, "beta");
  const ParamMap params;
  const auto us = samples(domain.t_min, domain.t_max);
  const auto tangents =
      null_tangents(beta, Var::t, domain.t_min, domain.t_max, params, "beta");
  for (std::size_t k = 0; k < tangents.size(); ++k) {
    check_pairing(eta0, tangents[k], at("t", us[k]) + " (<eta0, beta'> = 0)");
  }

  SurfaceDef def;
  def.name = std::move(name);
  def.domain = domain;
  for (int i = 0; i < 4; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double e = eta0[i];
    const bool beta_zero = beta[k].kind() == Expr::Kind::Number && beta[k].number() == 0.0;
    const Expr se = e == 1.0 ? var(Var::s) : num(e) * var(Var::s);
    if (e == 0.0) {
      def.components[k] = beta[k];
    } else {
      def.components[k] = beta_zero ? se : se + beta[k];
    }
  }
  validate(def);
  return def;
}

SurfaceDef null_translation(const Curve& phi, const Curve& psi,
                            const Domain& domain, std::string name,
                            ParamMap params) {
  require_single_variable(phi, Var::s, "phi");
  require_single_variable(psi, Var::t, "psi");
  const auto ss = samples(domain.s_min, domain.s_max);
  const auto ts = samples(domain.t_min, domain.t_max);
  const auto dphi =
      null_tangents(phi, Var::s, domain.s_min, domain.s_max, params, "phi");
  const auto dpsi =
      null_tangents(psi, Var::t, domain.t_min, domain.t_max, params, "psi");
  for (std::size_t i = 0; i < dphi.size(); ++i) {
    for (std::size_t j = 0; j < dpsi.size(); ++j) {
      if (std::abs(inner4(dphi[i], dpsi[j])) <
          kPairingFloor * euclidean_norm(dphi[i]) * euclidean_norm(dpsi[j])) {
        check_pairing(dphi[i], dpsi[j], "(" + at("s", ss[i]) + ", " + at("t", ts[j]) + ")");
      }
    }
  }

  SurfaceDef def;
  def.name = std::move(name);
  def.domain = domain;
  def.params = std::move(params);
  for (std::size_t k = 0; k < 4; ++k) def.components[k] = phi[k] + psi[k];
  validate(def);
  return def;
}

SurfaceDef random_null_translation(std::uint64_t seed, const Domain& domain) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-0.3, 0.3);
  // Draws are sequenced explicitly so the curves depend only on the seed.
  auto linear = [&](bool unit) {
    const double c0 = unit ? 1.0 : coef(rng);
    const double c1 = coef(rng);
    return Poly{c0, c1};
  };
  auto curve = [&](Var v, double orient) {
    const Poly a = linear(true);
    const Poly b = linear(false);
    const Poly c = linear(false);
    const Poly d = linear(false);
    const auto tan = lebesgue_tangent(a, b, c, d, orient);
    return Curve{integrated_polynomial(tan[0], v), integrated_polynomial(tan[1], v),
                 integrated_polynomial(tan[2], v), integrated_polynomial(tan[3], v)};
  };
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Curve phi = curve(Var::s, 1.0);
    const Curve psi = curve(Var::t, -1.0);
    try {
      return null_translation(phi, psi, domain,
                              "random-null-translation-" + std::to_string(seed));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateMetric) throw;
    }
  }
  throw Error(ErrorCode::DegenerateMetric,
              "no admissible random null curves for seed " + std::to_string(seed));
}

std::vector<SurfaceDef> control_surfaces() {
  std::vector<SurfaceDef> out;
  {
    SurfaceDef plane;
    plane.name = "plane";
    plane.components = {parse("s + t"), parse("s - t"), num(0), num(0)};
    out.push_back(checked_control(std::move(plane)));
  }
  {
    SurfaceDef graph;
    graph.name = "nonminimal-graph";
    graph.components = {parse("s + t"), parse("s - t"), parse("q*sin(s)"),
                        parse("q*cos(t)")};
    graph.params = {{"q", 0.2}};
    out.push_back(checked_control(std::move(graph)));
  }
  {
    SurfaceDef riem;
    riem.name = "riemannian-graph";
    riem.components = {parse("q*s*t"), var(Var::s), var(Var::t), num(0)};
    riem.params = {{"q", 0.2}};
    out.push_back(std::move(riem));
  }
  return out;
}

std::vector<SurfaceDef> minimal_catalog() {
  const Domain dom;
  const Curve phi = parse_curve({"s + s^3/3", "s^2", "s - s^3/3", "0"});
  return {
      degenerate_null_surface({1, 0, 0, 1},
                              parse_curve({"t + t^3/3", "t^2", "t - t^3/3", "0"}),
                              dom),
      null_translation(phi, parse_curve({"t + t^3/3", "t^2", "0", "t - t^3/3"}),
                       dom, "null-translation"),
      null_translation(phi, parse_curve({"t + t^3/3", "t^2", "-(t - t^3/3)", "0"}),
                       dom, "hyperplane-minimal"),
  };
}

std::vector<std::string> catalog_names() {
  return {"degenerate-null", "null-translation", "hyperplane-minimal",
          "plane", "nonminimal-graph", "riemannian-graph"};
}

SurfaceDef catalog_surface(std::string_view name) {
  for (auto& def : minimal_catalog()) {
    if (def.name == name) return def;
  }
  for (auto& def : control_surfaces()) {
    if (def.name == name) return def;
  }
  std::string valid;
  for (const auto& n : catalog_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::UnknownSurface,
              "unknown catalog surface '" + std::string(name) + "' (known: " +
                  valid + ")");
}

}  // namespace minkgauss
