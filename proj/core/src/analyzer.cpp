#include "minkgauss/analyzer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <variant>

namespace minkgauss {

namespace {

constexpr int kAlsMaxSweeps = 50;
constexpr double kAlsImprovement = 1e-12;

double norm_e(const Biv6& b) { return euclidean_norm(b); }

std::vector<double> components(const Biv6& b) {
  std::vector<double> c;
  for (int i = 0; i < Biv6::kSize; ++i) c.push_back(b[i]);
  return c;
}

// Running max with the first point kept on ties; samples arrive in
// lexicographic order, so this is the lexicographic tie-break.
struct WorstTracker {
  double residual = 0;
  ParamPoint point;
  bool any = false;

  void add(const ParamPoint& p, double r) {
    if (!any || r > residual) {
      residual = r;
      point = p;
      any = true;
    }
  }
};

Verdict make_verdict(std::string predicate, double tolerance) {
  Verdict v;
  v.predicate = std::move(predicate);
  v.tolerance = tolerance;
  return v;
}

// Fills residual details and sets the outcome from the tolerance.
template <typename F>
Verdict residual_verdict(const GridSamples& g, std::string predicate,
                         double tolerance, F&& residual_at) {
  Verdict v = make_verdict(std::move(predicate), tolerance);
  WorstTracker worst;
  v.details.reserve(g.samples.size());
  for (const auto& ps : g.samples) {
    const double r = residual_at(ps);
    v.details.push_back({ps.point(), r, 0.0});
    worst.add(ps.point(), r);
  }
  v.worst_residual = worst.residual;
  v.worst_point = worst.point;
  v.outcome = worst.any && worst.residual <= tolerance ? Outcome::holds
                                                      : Outcome::fails;
  if (!worst.any) {
    v.outcome = Outcome::inconclusive;
    v.note = "no evaluated grid points";
  }
  return v;
}

Verdict not_minimal(std::string predicate, const GridSamples& g,
                    double tolerance) {
  Verdict v = make_verdict(std::move(predicate), tolerance);
  v.outcome = Outcome::inconclusive;
  if (g.samples.empty()) {
    v.note = "no evaluated grid points";
  } else {
    v.note = "surface is not minimal on the grid (max |H| = " +
             std::to_string(g.max_H_norm()) + ")";
  }
  return v;
}

Biv6 laplacian_identity_rhs(const PointSample& ps) {
  const auto& fp = ps.frame;
  return fp.nu * (2.0 * fp.K) + fp.mu * (2.0 * fp.KD);
}

Biv6 bilaplacian_identity_rhs(const PointSample& ps) {
  const auto& fp = ps.frame;
  const double K = fp.K, KD = fp.KD;
  return fp.nu * (2.0 * (ps.lap_K + 2.0 * K * K - 2.0 * KD * KD)) +
         fp.mu * (2.0 * (ps.lap_KD + 4.0 * K * KD)) - ps.grad_K_nu * 4.0 -
         ps.grad_KD_mu * 4.0;
}

struct FitResult {
  std::vector<double> f;
  std::vector<double> residual;
  double max_residual = 0;
  ParamPoint worst;
};

FitResult first_kind_fit(const GridSamples& g) {
  FitResult r;
  WorstTracker worst;
  for (const auto& ps : g.samples) {
    const double f = -inner6(ps.lap_nu, ps.frame.nu);
    const double res = norm_e(ps.lap_nu - ps.frame.nu * f);
    r.f.push_back(f);
    r.residual.push_back(res);
    worst.add(ps.point(), res);
  }
  r.max_residual = worst.residual;
  r.worst = worst.point;
  return r;
}

struct SecondKindFit {
  FitResult fit;
  Biv6 C;
  int sweeps = 0;
  bool diverged = false;
};

// Alternating least squares for Delta nu = f (nu + C).
SecondKindFit second_kind_fit(const GridSamples& g, const FitResult& start) {
  SecondKindFit out;
  std::vector<double> f = start.f;
  Biv6 C;
  double prev = std::numeric_limits<double>::infinity();
  const auto n = g.samples.size();
  for (int sweep = 1; sweep <= kAlsMaxSweeps; ++sweep) {
    out.sweeps = sweep;
    double ff = 0.0;
    Biv6 num;
    for (std::size_t p = 0; p < n; ++p) {
      const auto& ps = g.samples[p];
      ff += f[p] * f[p];
      num += (ps.lap_nu - ps.frame.nu * f[p]) * f[p];
    }
    if (ff == 0.0) {
      out.diverged = true;
      break;
    }
    C = num * (1.0 / ff);
    double objective = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      const auto& ps = g.samples[p];
      const Biv6 w = ps.frame.nu + C;
      const double ww = euclidean_dot(w, w);
      f[p] = ww > 0.0 ? euclidean_dot(ps.lap_nu, w) / ww : 0.0;
      const Biv6 res = ps.lap_nu - w * f[p];
      objective += euclidean_dot(res, res);
    }
    if (!std::isfinite(objective)) {
      out.diverged = true;
      break;
    }
    if (prev - objective < kAlsImprovement) break;
    prev = objective;
  }
  out.C = C;
  WorstTracker worst;
  for (std::size_t p = 0; p < n; ++p) {
    const auto& ps = g.samples[p];
    const double res = norm_e(ps.lap_nu - (ps.frame.nu + C) * f[p]);
    out.fit.residual.push_back(res);
    worst.add(ps.point(), res);
  }
  out.fit.f = std::move(f);
  out.fit.max_residual = worst.residual;
  out.fit.worst = worst.point;
  return out;
}

double max_lap_nu(const GridSamples& g, ParamPoint* where = nullptr) {
  WorstTracker worst;
  for (const auto& ps : g.samples) worst.add(ps.point(), norm_e(ps.lap_nu));
  if (where) *where = worst.point;
  return worst.residual;
}

}  // namespace

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

void GridSpec::validate() const {
  if (n_s < 3 || n_t < 3) {
    throw Error(ErrorCode::ValidationError, "grid needs at least 3 samples per axis");
  }
  if (!(domain.s_min < domain.s_max) || !(domain.t_min < domain.t_max)) {
    throw Error(ErrorCode::ValidationError, "empty grid domain");
  }
  if (!(tol.identity_tol > 0) || !(tol.zero_tol > 0) || !(tol.nonzero_margin > 0)) {
    throw Error(ErrorCode::ValidationError, "tolerances must be positive");
  }
  if (!(tol.identity_tol > tol.zero_tol)) {
    throw Error(ErrorCode::ValidationError, "identity_tol must exceed zero_tol");
  }
}

std::vector<ParamPoint> GridSpec::points() const {
  std::vector<ParamPoint> pts;
  pts.reserve(static_cast<std::size_t>(n_s) * static_cast<std::size_t>(n_t));
  auto node = [](double lo, double hi, int i, int n) {
    if (i == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  for (int i = 0; i < n_s; ++i) {
    const double s = node(domain.s_min, domain.s_max, i, n_s);
    for (int j = 0; j < n_t; ++j) {
      pts.push_back({s, node(domain.t_min, domain.t_max, j, n_t)});
    }
  }
  return pts;
}

PointSample sample_point(const SurfaceDef& surface, ParamPoint p,
                         double zero_tol) {
  const JetFrame F = build_frame(surface, p);
  PointSample ps;
  ps.frame = F.values();
  ps.H_norm = euclidean_norm(ps.frame.H);
  const JetBiv6 lap = laplacian(F.nu, F);
  ps.lap_nu = values(lap);
  ps.lap2_nu = values(laplacian(lap, F));
  ps.lap_K = laplacian(F.K, F).value();
  ps.lap_KD = laplacian(F.KD, F).value();
  for (int a = 0; a < 2; ++a) {
    ps.dK[static_cast<std::size_t>(a)] = frame_derivative(F.K, F, a).value();
    ps.dKD[static_cast<std::size_t>(a)] = frame_derivative(F.KD, F, a).value();
  }
  ps.grad_K_nu = values(directional(F.nu, gradient_coords(F.K, F)));
  ps.grad_KD_mu = values(directional(F.mu, gradient_coords(F.KD, F)));
  ps.null_space = relative_null_space(ps.frame, zero_tol);
  ps.codazzi = codazzi_residual(F);
  return ps;
}

double GridSamples::max_H_norm() const {
  double m = 0.0;
  for (const auto& ps : samples) m = std::max(m, ps.H_norm);
  return m;
}

GridSamples sample_grid(const SurfaceDef& surface, const GridSpec& grid,
                        unsigned threads) {
  grid.validate();
  const auto pts = grid.points();
  using Slot = std::variant<std::monostate, PointSample, Exclusion>;
  std::vector<Slot> slots(pts.size());

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < pts.size(); i += stride) {
      try {
        slots[i] = sample_point(surface, pts[i], grid.tol.zero_tol);
      } catch (const Error& e) {
        slots[i] = Exclusion{pts[i], e.code(), e.what()};
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(pts.size(), 1)));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k, threads);
  }

  GridSamples out;
  out.grid = grid;
  out.total_points = pts.size();
  for (auto& slot : slots) {
    if (auto* ps = std::get_if<PointSample>(&slot)) {
      out.samples.push_back(std::move(*ps));
    } else if (auto* ex = std::get_if<Exclusion>(&slot)) {
      out.excluded.push_back(std::move(*ex));
    }
  }
  return out;
}

Verdict laplacian_identity_residual(const GridSamples& g) {
  const double tol = g.grid.tol.identity_tol;
  if (!g.minimal()) return not_minimal("laplacian-identity", g, tol);
  return residual_verdict(g, "laplacian-identity", tol, [](const PointSample& ps) {
    return norm_e(ps.lap_nu - laplacian_identity_rhs(ps));
  });
}

Verdict bilaplacian_identity_residual(const GridSamples& g) {
  const double tol = 10.0 * g.grid.tol.identity_tol;
  if (!g.minimal()) return not_minimal("bilaplacian-identity", g, tol);
  return residual_verdict(g, "bilaplacian-identity", tol, [](const PointSample& ps) {
    return norm_e(ps.lap2_nu - bilaplacian_identity_rhs(ps));
  });
}

Verdict pw1type_classify(const GridSamples& g) {
  const auto& tol = g.grid.tol;
  Verdict v = make_verdict("pw1type", tol.zero_tol);
  if (g.samples.empty()) {
    v.note = "no evaluated grid points";
    return v;
  }

  ParamPoint where;
  const double lap_max = max_lap_nu(g, &where);
  if (lap_max <= tol.zero_tol) {
    v.outcome = Outcome::holds;
    v.label = "harmonic";
    v.worst_residual = lap_max;
    v.worst_point = where;
    for (const auto& ps : g.samples) {
      v.details.push_back({ps.point(), norm_e(ps.lap_nu), 0.0});
    }
    return v;
  }

  auto fill = [&](const FitResult& fit) {
    v.details.clear();
    for (std::size_t p = 0; p < g.samples.size(); ++p) {
      v.details.push_back({g.samples[p].point(), fit.residual[p], fit.f[p]});
    }
    v.worst_residual = fit.max_residual;
    v.worst_point = fit.worst;
  };

  const FitResult first = first_kind_fit(g);
  v.tolerance = tol.identity_tol;
  if (first.max_residual <= tol.identity_tol) {
    v.outcome = Outcome::holds;
    v.label = "first-kind";
    fill(first);
    return v;
  }

  const SecondKindFit second = second_kind_fit(g, first);
  const double c_norm = norm_e(second.C);
  if (!second.diverged && second.fit.max_residual <= tol.identity_tol &&
      c_norm >= tol.nonzero_margin) {
    v.outcome = Outcome::holds;
    v.label = "second-kind";
    fill(second.fit);
    v.constant = components(second.C);
    return v;
  }

  v.outcome = Outcome::fails;
  v.label = "none";
  fill(first);
  v.constant = components(second.C);
  if (second.diverged) {
    v.note = "second-kind fit diverged after " + std::to_string(second.sweeps) +
             " sweeps";
  } else {
    v.note = "second-kind fit: max residual " +
             std::to_string(second.fit.max_residual) + ", |C| " +
             std::to_string(c_norm) + " after " +
             std::to_string(second.sweeps) + " sweeps";
  }
  return v;
}

bool EquivalenceBattery::all_hold() const {
  return std::all_of(predicates.begin(), predicates.end(),
                     [](const Verdict& v) { return v.outcome == Outcome::holds; });
}

bool EquivalenceBattery::all_fail() const {
  return std::all_of(predicates.begin(), predicates.end(),
                     [](const Verdict& v) { return v.outcome == Outcome::fails; });
}

EquivalenceBattery equivalence_battery(const GridSamples& g) {
  static const std::array<const char*, 6> names{
      "pointwise-1-type", "first-kind",         "harmonic",
      "degenerate-relative-null-bundle", "flat-normal-bundle",
      "degenerate-null-family"};
  const auto& tol = g.grid.tol;
  EquivalenceBattery b;
  b.hyperplane = make_verdict("contained-in-hyperplane", tol.zero_tol);

  if (!g.minimal()) {
    for (std::size_t i = 0; i < 6; ++i) {
      b.predicates[i] = not_minimal(names[i], g, tol.zero_tol);
    }
    b.hyperplane.note = "not evaluated";
    return b;
  }

  // (vii): the sampled tangent vectors span less than R^4.
  {
    Eigen::MatrixXd span(4, static_cast<Eigen::Index>(2 * g.samples.size()));
    Eigen::Index col = 0;
    for (const auto& ps : g.samples) {
      for (const Vec4* v : {&ps.frame.x_s, &ps.frame.x_t}) {
        const double n = euclidean_norm(*v);
        for (int k = 0; k < 4; ++k) span(k, col) = (*v)[k] / n;
        ++col;
      }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(span);
    const auto& sv = svd.singularValues();
    b.hyperplane.worst_residual = sv(3) / sv(0);
    b.hyperplane.outcome = b.hyperplane.worst_residual <= tol.zero_tol
                               ? Outcome::holds
                               : Outcome::fails;
    b.hyperplane.note = "ratio of smallest to largest singular value of the sampled tangent span";
  }

  const Verdict pw = pw1type_classify(g);
  {
    Verdict v = make_verdict(names[0], pw.tolerance);
    v.outcome = pw.outcome == Outcome::holds ? Outcome::holds : Outcome::fails;
    v.label = pw.label;
    v.worst_residual = pw.worst_residual;
    v.worst_point = pw.worst_point;
    b.predicates[0] = std::move(v);
  }
  {
    const FitResult first = first_kind_fit(g);
    Verdict v = make_verdict(names[1], tol.identity_tol);
    v.worst_residual = first.max_residual;
    v.worst_point = first.worst;
    v.outcome = first.max_residual <= tol.identity_tol ? Outcome::holds
                                                        : Outcome::fails;
    b.predicates[1] = std::move(v);
  }
  b.predicates[2] = residual_verdict(
      g, names[2], tol.zero_tol,
      [](const PointSample& ps) { return norm_e(ps.lap_nu); });
  b.predicates[3] = residual_verdict(
      g, names[3], tol.zero_tol, [](const PointSample& ps) {
        const auto& ns = ps.null_space;
        switch (ns.dimension) {
          case 0: return ns.sigma_min;
          case 2: return 1.0;  // the whole tangent plane is never degenerate
          default: {
            const Vec4& gen = *ns.generator;
            return std::abs(inner4(gen, gen)) / euclidean_dot(gen, gen);
          }
        }
      });
  b.predicates[4] = residual_verdict(
      g, names[4], tol.zero_tol,
      [](const PointSample& ps) { return std::abs(ps.frame.KD); });
  {
    Verdict v = make_verdict(names[5], tol.zero_tol);
    WorstTracker w11, w22;
    for (const auto& ps : g.samples) {
      w11.add(ps.point(), euclidean_norm(ps.frame.h11));
      w22.add(ps.point(), euclidean_norm(ps.frame.h22));
    }
    const WorstTracker& best = w22.residual < w11.residual ? w22 : w11;
    v.worst_residual = best.residual;
    v.worst_point = best.point;
    v.label = &best == &w11 ? "h(f1,f1)" : "h(f2,f2)";
    v.outcome = best.residual <= tol.zero_tol ? Outcome::holds : Outcome::fails;
    b.predicates[5] = std::move(v);
  }

  b.hypothesis_met = b.hyperplane.outcome == Outcome::fails;
  if (b.hypothesis_met) {
    b.consistent = b.all_hold() || b.all_fail();
  } else {
    for (auto& p : b.predicates) {
      p.note = "surface lies in a hyperplane; equivalence not asserted";
    }
  }
  return b;
}

std::array<Verdict, 3> curvature_system_residuals(
    const GridSamples& g, const std::vector<double>& f_estimate) {
  const double tol = g.grid.tol.identity_tol;
  std::array<Verdict, 3> out;
  const std::array<const char*, 3> names{"curvature-system-K", "curvature-system-KD",
                                         "curvature-system-gradient"};
  if (!g.minimal()) {
    for (std::size_t i = 0; i < 3; ++i) out[i] = not_minimal(names[i], g, tol);
    return out;
  }
  if (f_estimate.size() != 1 && f_estimate.size() != g.samples.size()) {
    throw Error(ErrorCode::ValidationError,
                "f estimate needs 1 or " + std::to_string(g.samples.size()) +
                    " values, got " + std::to_string(f_estimate.size()));
  }
  auto f_at = [&](std::size_t p) {
    return f_estimate.size() == 1 ? f_estimate[0] : f_estimate[p];
  };
  std::array<std::vector<double>, 3> res;
  for (std::size_t p = 0; p < g.samples.size(); ++p) {
    const auto& ps = g.samples[p];
    const double K = ps.frame.K, KD = ps.frame.KD, f = f_at(p);
    res[0].push_back(std::abs(ps.lap_K + 2.0 * K * K - 2.0 * KD * KD - f * K));
    res[1].push_back(std::abs(ps.lap_KD + 4.0 * K * KD - f * KD));
    res[2].push_back(norm_e(ps.grad_K_nu + ps.grad_KD_mu));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t p = 0;
    out[i] = residual_verdict(g, names[i], tol,
                              [&](const PointSample&) { return res[i][p++]; });
  }
  return out;
}

Verdict gradient_matrices_check(const GridSamples& g) {
  const double tol = g.grid.tol.identity_tol;
  if (!g.minimal()) return not_minimal("gradient-matrices", g, tol);
  Verdict v = residual_verdict(g, "gradient-matrices", tol, [](const PointSample& ps) {
    const auto& h = ps.frame.h;
    const double a1 = h.h3_22 * ps.dK[0] - h.h4_22 * ps.dKD[0];
    const double a2 = h.h4_22 * ps.dK[0] + h.h3_22 * ps.dKD[0];
    const double b1 = h.h3_11 * ps.dK[1] + h.h4_11 * ps.dKD[1];
    const double b2 = h.h4_11 * ps.dK[1] - h.h3_11 * ps.dKD[1];
    return std::max(std::hypot(a1, a2), std::hypot(b1, b2));
  });
  v.label = "diagnostic";
  return v;
}

Verdict null2type_test(const GridSamples& g) {
  const auto& tol = g.grid.tol;
  if (!g.minimal()) return not_minimal("null2type", g, tol.nonzero_margin);
  Verdict v = make_verdict("null2type", tol.nonzero_margin);

  ParamPoint where;
  if (max_lap_nu(g, &where) <= tol.zero_tol) {
    WorstTracker worst;
    for (const auto& ps : g.samples) {
      const double r = norm_e(ps.lap2_nu);
      v.details.push_back({ps.point(), r, 0.0});
      worst.add(ps.point(), r);
    }
    v.worst_residual = worst.residual;
    v.worst_point = worst.point;
    v.label = "harmonic";
    v.outcome = worst.residual <= v.tolerance ? Outcome::holds : Outcome::fails;
    v.note = "Delta nu vanishes on the grid";
    return v;
  }

  WorstTracker worst;
  double f_lo = std::numeric_limits<double>::infinity();
  double f_hi = -f_lo;
  double kd_max = 0.0;
  for (const auto& ps : g.samples) {
    const double ll = euclidean_dot(ps.lap_nu, ps.lap_nu);
    double f = 0.0;
    if (std::sqrt(ll) > tol.zero_tol) {
      f = euclidean_dot(ps.lap2_nu, ps.lap_nu) / ll;
      f_lo = std::min(f_lo, f);
      f_hi = std::max(f_hi, f);
    }
    const double r = norm_e(ps.lap2_nu - ps.lap_nu * f);
    v.details.push_back({ps.point(), r, f});
    worst.add(ps.point(), r);
    kd_max = std::max(kd_max, std::abs(ps.frame.KD));
  }
  const double spread = f_hi - f_lo;
  const bool fit_ok = worst.residual <= tol.nonzero_margin;
  const bool constant = spread <= tol.nonzero_margin;

  v.worst_residual = std::max(worst.residual, spread);
  v.worst_point = worst.point;
  v.outcome = v.worst_residual <= v.tolerance ? Outcome::holds : Outcome::fails;
  if (fit_ok && kd_max > tol.nonzero_margin) {
    v.label = "violates-theorem";
  } else if (!fit_ok || !constant) {
    v.label = "no-null-2-type-witness";
  } else {
    v.label = "one-type";
  }
  v.note = "max pointwise residual " + std::to_string(worst.residual) +
           ", spread of f " + std::to_string(spread);
  return v;
}

std::vector<double> fitted_f(const Verdict& null2type, const GridSamples& g) {
  std::vector<double> f;
  f.reserve(g.samples.size());
  if (null2type.details.size() != g.samples.size()) {
    f.assign(g.samples.size(), 0.0);
    return f;
  }
  for (const auto& d : null2type.details) f.push_back(d.value);
  return f;
}

Analysis analyze(const SurfaceDef& surface, const GridSpec& grid,
                 unsigned threads) {
  Analysis a;
  a.samples = sample_grid(surface, grid, threads);
  const GridSamples& g = a.samples;
  a.laplacian_identity = laplacian_identity_residual(g);
  a.bilaplacian_identity = bilaplacian_identity_residual(g);
  a.pw1type = pw1type_classify(g);
  a.null2type = null2type_test(g);
  a.curvature_system = curvature_system_residuals(g, fitted_f(a.null2type, g));
  a.gradient_matrices = gradient_matrices_check(g);
  if (g.minimal()) a.battery = equivalence_battery(g);
  return a;
}

}  // namespace minkgauss
