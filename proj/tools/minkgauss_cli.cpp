#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "minkgauss/analyzer.hpp"
#include "minkgauss/catalog.hpp"
#include "minkgauss/error.hpp"
#include "minkgauss/report.hpp"
#include "minkgauss/surface.hpp"
#include "minkgauss/verify/suites.hpp"

namespace mg = minkgauss;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitEngine = 3;

struct GridFlags {
  std::optional<int> grid;
  std::vector<double> domain;
  std::optional<double> tol;
  unsigned threads = 1;
};

void add_grid_flags(CLI::App* cmd, GridFlags& f) {
  cmd->add_option("--grid", f.grid, "samples per axis (square grid)")->check(CLI::Range(3, 100000));
  cmd->add_option("--domain", f.domain, "grid rectangle: s_min s_max t_min t_max")->expected(4);
  cmd->add_option("--tol", f.tol, "identity tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "worker threads, 0 = hardware concurrency");
}

mg::SurfaceDef load(const std::string& spec) {
  constexpr std::string_view prefix = "catalog:";
  if (spec.starts_with(prefix)) return mg::catalog_surface(spec.substr(prefix.size()));
  return mg::load_surface(spec);
}

mg::GridSpec make_grid(const mg::SurfaceDef& s, const GridFlags& f) {
  mg::GridSpec g;
  g.domain = s.domain;
  if (f.grid) g.n_s = g.n_t = *f.grid;
  if (!f.domain.empty()) g.domain = {f.domain[0], f.domain[1], f.domain[2], f.domain[3]};
  if (f.tol) g.tol.identity_tol = *f.tol;
  g.validate();
  return g;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

bool too_many_exclusions(const mg::GridSamples& g) {
  return static_cast<double>(g.excluded.size()) > 0.1 * static_cast<double>(g.total_points);
}

void report_exclusions(const mg::GridSamples& g) {
  if (g.excluded.empty()) return;
  std::cerr << g.excluded.size() << " of " << g.total_points << " grid points excluded";
  const auto& first = g.excluded.front();
  std::cerr << "; first: " << first.reason << "\n";
}

void print_verdict(const mg::Verdict& v) {
  std::cout << std::left << std::setw(34) << v.predicate << std::setw(13)
            << mg::to_string(v.outcome) << std::setw(24) << v.label
            << std::scientific << std::setprecision(3) << v.worst_residual
            << std::defaultfloat << "  at (" << v.worst_point.s << ", "
            << v.worst_point.t << ")\n";
}

void print_summary(const mg::Analysis& a) {
  const auto& g = a.samples;
  std::cout << "points " << g.total_points << ", evaluated " << g.samples.size()
            << ", minimal " << (g.minimal() ? "yes" : "no") << "\n";
  print_verdict(a.laplacian_identity);
  print_verdict(a.bilaplacian_identity);
  print_verdict(a.pw1type);
  print_verdict(a.null2type);
  for (const auto& v : a.curvature_system) print_verdict(v);
  print_verdict(a.gradient_matrices);
  if (a.battery) {
    for (const auto& v : a.battery->predicates) print_verdict(v);
    print_verdict(a.battery->hyperplane);
    std::cout << "battery consistent: "
              << (a.battery->consistent ? (*a.battery->consistent ? "yes" : "no")
                                          : "not asserted (hypothesis not met)")
              << "\n";
  }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_analyze(const std::string& surface, const GridFlags& flags,
                const std::string& json, const std::string& csv, bool timings) {
  const auto t0 = std::chrono::steady_clock::now();
  mg::SurfaceDef def;
  mg::GridSpec grid;
  try {
    def = load(surface);
    grid = make_grid(def, flags);
  } catch (const mg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const mg::Analysis a = mg::analyze(def, grid, flags.threads);
  mg::Timings t{{"total", ms_since(t0)}};
  std::cerr << "analyzed " << def.name << " in " << std::fixed << std::setprecision(1)
            << t["total"] << " ms\n" << std::defaultfloat;
  report_exclusions(a.samples);

  if (!json.empty() && !write_file(json, mg::report_json(def, a, timings ? &t : nullptr))) {
    return kExitInput;
  }
  if (!csv.empty() && !write_file(csv, mg::fields_csv(a.samples))) return kExitInput;
  if (json.empty()) print_summary(a);
  return too_many_exclusions(a.samples) ? kExitEngine : kExitOk;
}

int cmd_fields(const std::string& surface, const GridFlags& flags, const std::string& csv) {
  mg::SurfaceDef def;
  mg::GridSpec grid;
  try {
    def = load(surface);
    grid = make_grid(def, flags);
  } catch (const mg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const mg::GridSamples g = mg::sample_grid(def, grid, flags.threads);
  report_exclusions(g);
  const std::string text = mg::fields_csv(g);
  if (csv.empty()) {
    std::cout << text;
  } else if (!write_file(csv, text)) {
    return kExitInput;
  }
  return too_many_exclusions(g) ? kExitEngine : kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, unsigned threads) {
  if (!mg::verify::is_suite(suite)) {
    std::cerr << "error: unknown suite '" << suite << "'; valid suites:";
    for (const auto& n : mg::verify::suite_names()) std::cerr << " " << n;
    std::cerr << " all\n";
    return kExitInput;
  }
  bool ok = true;
  for (const auto& r : mg::verify::run(suite, seed, threads)) {
    std::cout << "== " << r.suite << " (seed " << r.seed << ", " << std::fixed
              << std::setprecision(2) << r.seconds << " s)\n" << std::defaultfloat;
    for (const auto& c : r.checks) {
      std::cout << "  " << (c.passed ? "pass" : "FAIL") << "  " << std::left
                << std::setw(74) << c.name << " worst " << std::scientific
                << std::setprecision(2) << c.worst << " / tol " << c.tolerance
                << std::defaultfloat << "\n";
      if (!c.passed) std::cout << "        failing case: " << c.failure << "\n";
    }
    ok = ok && r.passed();
  }
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss-map analysis of Lorentzian surfaces in Minkowski 4-space"};
  app.set_version_flag("--version", std::string(mg::kToolVersion));
  app.require_subcommand(1);

  std::string surface, json, csv, suite;
  GridFlags flags;
  bool timings = false;
  std::uint64_t seed = 20240607;

  auto* analyze = app.add_subcommand("analyze", "run every predicate over a sample grid");
  analyze->add_option("surface", surface, "surface file or catalog:<name>")->required();
  add_grid_flags(analyze, flags);
  analyze->add_option("--json", json, "write the JSON report here");
  analyze->add_option("--csv", csv, "write the per-point field dump here");
  analyze->add_flag("--timings", timings, "include wall-clock timings in the JSON report");

  auto* fields = app.add_subcommand("fields", "per-point K, K^D, |H|, |lap nu| as CSV");
  fields->add_option("surface", surface, "surface file or catalog:<name>")->required();
  add_grid_flags(fields, flags);
  fields->add_option("--csv", csv, "output path (default: standard output)");

  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("suite", suite, "algebra, jets, engine, identities, classification or all")
      ->required();
  verify->add_option("--seed", seed, "seed for randomized cases");
  verify->add_option("--threads", flags.threads, "worker threads, 0 = hardware concurrency");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(surface, flags, json, csv, timings);
    if (*fields) return cmd_fields(surface, flags, csv);
    return cmd_verify(suite, seed, flags.threads);
  } catch (const mg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEngine;
  }
}
