#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minkgauss/error.hpp"
#include "minkgauss/frame.hpp"
#include "minkgauss/surface.hpp"

namespace minkgauss {

struct Tolerances {
  double identity_tol = 1e-8;
  double zero_tol = 1e-10;
  double nonzero_margin = 1e-4;
};

struct GridSpec {
  Domain domain;  // defaults to [-0.8, 0.8]^2
  int n_s = 17;
  int n_t = 17;
  Tolerances tol;

  // Throws ValidationError unless n_s, n_t >= 3, tolerances are positive and
  // identity_tol > zero_tol.
  void validate() const;
  // Grid nodes in lexicographic (s, t) order, endpoints included.
  std::vector<ParamPoint> points() const;
};

enum class Outcome { holds, fails, inconclusive };
std::string_view to_string(Outcome o) noexcept;

struct PointRecord {
  ParamPoint point;
  double residual = 0;
  double value = 0;  // predicate-specific sample, e.g. the fitted f
};

struct Verdict {
  std::string predicate;
  Outcome outcome = Outcome::inconclusive;
  std::string label;
  double worst_residual = 0;
  ParamPoint worst_point;
  double tolerance = 0;
  std::vector<PointRecord> details;
  std::vector<double> constant;  // fitted constant vector, if any
  std::string note;
};

struct Exclusion {
  ParamPoint point;
  ErrorCode code;
  std::string reason;
};

// Everything the finite-type predicates need at one grid point.
struct PointSample {
  FramePoint frame;
  double H_norm = 0;
  Biv6 lap_nu;   // Delta nu
  Biv6 lap2_nu;  // Delta^2 nu
  double lap_K = 0, lap_KD = 0;
  std::array<double, 2> dK{};   // f1(K), f2(K)
  std::array<double, 2> dKD{};  // f1(K^D), f2(K^D)
  Biv6 grad_K_nu;    // (grad K)(nu): derivative of nu along grad K
  Biv6 grad_KD_mu;   // (grad K^D)(mu)
  RelativeNullSpace null_space;
  CodazziResidual codazzi;

  const ParamPoint& point() const { return frame.point; }
};

PointSample sample_point(const SurfaceDef& surface, ParamPoint p,
                         double zero_tol = Tolerances{}.zero_tol);

struct GridSamples {
  GridSpec grid;
  std::size_t total_points = 0;
  std::vector<PointSample> samples;  // evaluated points, lexicographic order
  std::vector<Exclusion> excluded;

  double max_H_norm() const;
  bool minimal() const { return !samples.empty() && max_H_norm() <= grid.tol.zero_tol; }
};

// Evaluates every grid point; points raising engine errors are excluded and
// listed. threads == 0 uses the hardware concurrency. Results do not depend
// on the thread count.
GridSamples sample_grid(const SurfaceDef& surface, const GridSpec& grid,
                        unsigned threads = 1);

Verdict laplacian_identity_residual(const GridSamples& g);
Verdict bilaplacian_identity_residual(const GridSamples& g);

// Pointwise 1-type classification: label is "harmonic", "first-kind",
// "second-kind" or "none"; outcome holds for the first three.
Verdict pw1type_classify(const GridSamples& g);

struct EquivalenceBattery {
  // (i) pointwise 1-type, (ii) first kind, (iii) harmonic, (iv) degenerate
  // relative null bundle, (v) flat normal bundle, (vi) family x = s eta0 + beta.
  std::array<Verdict, 6> predicates;
  Verdict hyperplane;  // (vii), informational
  bool hypothesis_met = false;
  std::optional<bool> consistent;  // empty when the hypothesis is not met
  bool all_hold() const;
  bool all_fail() const;
};

EquivalenceBattery equivalence_battery(const GridSamples& g);

// Delta K + 2K^2 - 2K_D^2 = fK, Delta K^D + 4 K K^D = f K^D and
// (grad K)(nu) + (grad K^D)(mu) = 0. f_estimate holds one value per evaluated
// sample, or a single value used everywhere.
std::array<Verdict, 3> curvature_system_residuals(
    const GridSamples& g, const std::vector<double>& f_estimate);

// Products of the h-matrices with (f1(K), f1(K^D)) and (f2(K), f2(K^D)).
Verdict gradient_matrices_check(const GridSamples& g);

// Fits Delta^2 nu = f Delta nu; label is "harmonic", "no-null-2-type-witness",
// "one-type" or "violates-theorem".
Verdict null2type_test(const GridSamples& g);

// f* samples from a null2type verdict, aligned with g.samples.
std::vector<double> fitted_f(const Verdict& null2type, const GridSamples& g);

struct Analysis {
  GridSamples samples;
  Verdict laplacian_identity, bilaplacian_identity, pw1type, null2type;
  Verdict gradient_matrices;
  std::array<Verdict, 3> curvature_system;
  std::optional<EquivalenceBattery> battery;  // minimal surfaces only
};

Analysis analyze(const SurfaceDef& surface, const GridSpec& grid,
                 unsigned threads = 1);

}  // namespace minkgauss
