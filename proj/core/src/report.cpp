#include "minkgauss/report.hpp"

#include <algorithm>
#include <charconv>
#include <nlohmann/json.hpp>

namespace minkgauss {

namespace {

using nlohmann::ordered_json;

ordered_json point_json(const ParamPoint& p) { return ordered_json::array({p.s, p.t}); }

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["predicate"] = v.predicate;
  j["outcome"] = std::string(to_string(v.outcome));
  j["label"] = v.label;
  j["worst_residual"] = v.worst_residual;
  j["worst_point"] = point_json(v.worst_point);
  j["tolerance"] = v.tolerance;
  j["constant"] = v.constant;
  j["note"] = v.note;
  ordered_json details = ordered_json::array();
  for (const auto& d : v.details) {
    details.push_back(ordered_json::array({d.point.s, d.point.t, d.residual, d.value}));
  }
  j["details"] = std::move(details);
  return j;
}

ordered_json domain_json(const Domain& d) {
  return ordered_json::array({d.s_min, d.s_max, d.t_min, d.t_max});
}

std::string number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string report_json(const SurfaceDef& surface, const Analysis& a,
                        const Timings* timings) {
  const GridSamples& g = a.samples;
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;

  ordered_json s;
  s["name"] = surface.name;
  s["definition"] = format_surface(surface);
  ordered_json comps = ordered_json::array();
  for (const auto& c : surface.components) comps.push_back(format(c));
  s["components"] = std::move(comps);
  s["domain"] = domain_json(surface.domain);
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : surface.params) params[k] = v;
  s["params"] = std::move(params);
  j["surface"] = std::move(s);

  ordered_json grid;
  grid["domain"] = domain_json(g.grid.domain);
  grid["n_s"] = g.grid.n_s;
  grid["n_t"] = g.grid.n_t;
  grid["identity_tol"] = g.grid.tol.identity_tol;
  grid["zero_tol"] = g.grid.tol.zero_tol;
  grid["nonzero_margin"] = g.grid.tol.nonzero_margin;
  j["grid"] = std::move(grid);

  ordered_json summary;
  summary["points"] = g.total_points;
  summary["evaluated"] = g.samples.size();
  summary["excluded"] = g.excluded.size();
  summary["minimal"] = g.minimal();
  summary["max_H_norm"] = g.max_H_norm();
  if (!g.samples.empty()) {
    double klo = g.samples.front().frame.K, khi = klo;
    double dlo = g.samples.front().frame.KD, dhi = dlo;
    for (const auto& ps : g.samples) {
      klo = std::min(klo, ps.frame.K);
      khi = std::max(khi, ps.frame.K);
      dlo = std::min(dlo, ps.frame.KD);
      dhi = std::max(dhi, ps.frame.KD);
    }
    summary["K_range"] = ordered_json::array({klo, khi});
    summary["KD_range"] = ordered_json::array({dlo, dhi});
  } else {
    summary["K_range"] = nullptr;
    summary["KD_range"] = nullptr;
  }
  j["summary"] = std::move(summary);

  ordered_json verdicts;
  verdicts["laplacian_identity"] = verdict_json(a.laplacian_identity);
  verdicts["bilaplacian_identity"] = verdict_json(a.bilaplacian_identity);
  verdicts["pw1type"] = verdict_json(a.pw1type);
  if (a.battery) {
    const EquivalenceBattery& b = *a.battery;
    ordered_json battery;
    ordered_json preds = ordered_json::array();
    for (const auto& p : b.predicates) preds.push_back(verdict_json(p));
    battery["predicates"] = std::move(preds);
    battery["hyperplane"] = verdict_json(b.hyperplane);
    battery["hypothesis_met"] = b.hypothesis_met;
    battery["consistent"] = b.consistent ? ordered_json(*b.consistent) : ordered_json();
    battery["all_hold"] = b.all_hold();
    verdicts["equivalence_battery"] = std::move(battery);
  } else {
    verdicts["equivalence_battery"] = nullptr;
  }
  verdicts["null2type"] = verdict_json(a.null2type);
  ordered_json sys = ordered_json::array();
  for (const auto& v : a.curvature_system) sys.push_back(verdict_json(v));
  verdicts["curvature_system"] = std::move(sys);
  verdicts["gradient_matrices"] = verdict_json(a.gradient_matrices);
  j["verdicts"] = std::move(verdicts);

  ordered_json excluded = ordered_json::array();
  for (const auto& e : g.excluded) {
    ordered_json x;
    x["point"] = point_json(e.point);
    x["code"] = std::string(to_string(e.code));
    x["reason"] = e.reason;
    excluded.push_back(std::move(x));
  }
  j["excluded"] = std::move(excluded);

  if (timings) {
    ordered_json t = ordered_json::object();
    for (const auto& [k, v] : *timings) t[k] = v;
    j["timings_ms"] = std::move(t);
  }
  return j.dump(2) + "\n";
}

std::string fields_csv(const GridSamples& g) {
  std::string out = "s,t,det_g,K,KD,H_norm,lap_nu_norm\n";
  auto ok = g.samples.begin();
  for (const auto& p : g.grid.points()) {
    out += number(p.s) + "," + number(p.t);
    if (ok != g.samples.end() && ok->point() == p) {
      const auto& fp = ok->frame;
      for (const double v : {fp.g.det, fp.K, fp.KD, ok->H_norm,
                             euclidean_norm(ok->lap_nu)}) {
        out += "," + number(v);
      }
      ++ok;
    } else {
      out += ",nan,nan,nan,nan,nan";
    }
    out += "\n";
  }
  return out;
}

}  // namespace minkgauss
