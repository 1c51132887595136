#include <gtest/gtest.h>

#include <cmath>

#include "minkgauss/analyzer.hpp"
#include "minkgauss/catalog.hpp"
#include "minkgauss/error.hpp"

namespace mg = minkgauss;
using mg::Outcome;

namespace {

// Built once; sampling the three canonical surfaces is the slow part.
struct Fixture : ::testing::Test {
  static const mg::GridSamples& degenerate() { return get(0); }
  static const mg::GridSamples& generic() { return get(1); }
  static const mg::GridSamples& hyper() { return get(2); }

  static const mg::GridSamples& get(std::size_t i) {
    static const std::vector<mg::GridSamples> all = [] {
      std::vector<mg::GridSamples> v;
      for (const auto& s : mg::minimal_catalog()) v.push_back(mg::sample_grid(s, mg::GridSpec{}));
      return v;
    }();
    return all.at(i);
  }
};

using Identities = Fixture;
using Classification = Fixture;
using Battery = Fixture;
using NullTwoType = Fixture;

}  // namespace

TEST(Grid, PointsAndValidation) {
  mg::GridSpec g;
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 289u);
  EXPECT_EQ(pts.front(), (mg::ParamPoint{-0.8, -0.8}));
  EXPECT_EQ(pts[1].s, -0.8);
  EXPECT_EQ(pts.back(), (mg::ParamPoint{0.8, 0.8}));
  g.n_s = 2;
  EXPECT_THROW(g.validate(), mg::Error);
  g = mg::GridSpec{};
  g.tol.identity_tol = 1e-12;
  EXPECT_THROW(g.validate(), mg::Error);
}

TEST_F(Identities, LaplacianIdentityOnCatalog) {
  EXPECT_LE(mg::laplacian_identity_residual(degenerate()).worst_residual, 1e-10);
  for (const auto* g : {&generic(), &hyper()}) {
    const mg::Verdict v = mg::laplacian_identity_residual(*g);
    EXPECT_EQ(v.outcome, Outcome::holds);
    EXPECT_LE(v.worst_residual, 1e-8);
  }
}

TEST_F(Identities, BilaplacianIdentityOnCatalog) {
  EXPECT_LE(mg::bilaplacian_identity_residual(degenerate()).worst_residual, 1e-10);
  for (const auto* g : {&generic(), &hyper()}) {
    const mg::Verdict v = mg::bilaplacian_identity_residual(*g);
    EXPECT_EQ(v.outcome, Outcome::holds);
    EXPECT_LE(v.worst_residual, 1e-7);
  }
  for (const auto& ps : hyper().samples) {
    EXPECT_LE(std::abs(ps.frame.KD), 1e-10);
    EXPECT_LE(mg::euclidean_norm(ps.grad_KD_mu), 1e-8);
  }
}

TEST(IdentitiesGate, NonMinimalIsInconclusive) {
  const auto g = mg::sample_grid(mg::catalog_surface("nonminimal-graph"), mg::GridSpec{});
  EXPECT_EQ(mg::laplacian_identity_residual(g).outcome, Outcome::inconclusive);
  EXPECT_EQ(mg::bilaplacian_identity_residual(g).outcome, Outcome::inconclusive);
  EXPECT_EQ(mg::null2type_test(g).outcome, Outcome::inconclusive);
  EXPECT_EQ(mg::gradient_matrices_check(g).outcome, Outcome::inconclusive);
  EXPECT_EQ(mg::equivalence_battery(g).predicates[0].outcome, Outcome::inconclusive);
  EXPECT_NE(mg::pw1type_classify(g).label, "");
}

TEST_F(Classification, CanonicalSurfaces) {
  EXPECT_EQ(mg::pw1type_classify(degenerate()).label, "harmonic");
  const mg::Verdict h = mg::pw1type_classify(hyper());
  EXPECT_EQ(h.label, "first-kind");
  ASSERT_EQ(h.details.size(), hyper().samples.size());
  for (std::size_t p = 0; p < h.details.size(); ++p) {
    EXPECT_NEAR(h.details[p].value, 2.0 * hyper().samples[p].frame.K, 1e-8);
  }
  const mg::Verdict g = mg::pw1type_classify(generic());
  EXPECT_EQ(g.label, "none");
  EXPECT_EQ(g.outcome, Outcome::fails);
  EXPECT_GT(g.worst_residual, mg::Tolerances{}.nonzero_margin);
}

TEST_F(Battery, DegenerateAllHold) {
  const mg::EquivalenceBattery b = mg::equivalence_battery(degenerate());
  EXPECT_TRUE(b.hypothesis_met);
  EXPECT_TRUE(b.all_hold());
  for (const auto& v : b.predicates) EXPECT_LE(v.worst_residual, 1e-8) << v.predicate;
  ASSERT_TRUE(b.consistent.has_value());
  EXPECT_TRUE(*b.consistent);
}

TEST_F(Battery, GenericAllFailByMargin) {
  const mg::EquivalenceBattery b = mg::equivalence_battery(generic());
  EXPECT_TRUE(b.hypothesis_met);
  EXPECT_TRUE(b.all_fail());
  for (const auto& v : b.predicates) EXPECT_GE(v.worst_residual, 1e-4) << v.predicate;
  ASSERT_TRUE(b.consistent.has_value());
  EXPECT_TRUE(*b.consistent);
}

TEST_F(Battery, HyperplaneGate) {
  const mg::EquivalenceBattery b = mg::equivalence_battery(hyper());
  EXPECT_EQ(b.hyperplane.outcome, Outcome::holds);
  EXPECT_FALSE(b.hypothesis_met);
  EXPECT_FALSE(b.consistent.has_value());
}

TEST_F(NullTwoType, CatalogVerdicts) {
  EXPECT_EQ(mg::null2type_test(degenerate()).label, "harmonic");
  EXPECT_EQ(mg::null2type_test(generic()).label, "no-null-2-type-witness");
  EXPECT_EQ(mg::null2type_test(hyper()).label, "no-null-2-type-witness");
}

TEST_F(NullTwoType, CurvatureSystem) {
  for (const auto& v : mg::curvature_system_residuals(degenerate(), {0.0})) {
    EXPECT_LE(v.worst_residual, 1e-10) << v.predicate;
  }
  const auto sys = mg::curvature_system_residuals(
      generic(), mg::fitted_f(mg::null2type_test(generic()), generic()));
  double biggest = 0;
  for (const auto& v : sys) biggest = std::max(biggest, v.worst_residual);
  EXPECT_GT(biggest, 1e-4);
  EXPECT_THROW(mg::curvature_system_residuals(generic(), {1.0, 2.0}), mg::Error);
}

TEST_F(NullTwoType, GradientMatricesDiagnostic) {
  const mg::Verdict d = mg::gradient_matrices_check(degenerate());
  EXPECT_EQ(d.label, "diagnostic");
  EXPECT_LE(d.worst_residual, 1e-10);
  EXPECT_GT(mg::gradient_matrices_check(generic()).worst_residual, 1e-4);
}

TEST(Sampling, ExclusionsAreListed) {
  // g_ss = 1 - 16 s^2 turns Riemannian for |s| < 1/4.
  mg::SurfaceDef d;
  d.name = "partly-riemannian";
  d.components = {mg::parse("2*s^2"), mg::parse("s"), mg::parse("t"), mg::parse("0")};
  const auto g = mg::sample_grid(d, mg::GridSpec{});
  EXPECT_EQ(g.total_points, 289u);
  EXPECT_EQ(g.excluded.size(), 5u * 17u);
  EXPECT_EQ(g.samples.size() + g.excluded.size(), g.total_points);
  for (const auto& e : g.excluded) {
    EXPECT_EQ(e.code, mg::ErrorCode::NotLorentzian);
    EXPECT_LT(std::abs(e.point.s), 0.25);
  }
}

TEST(Sampling, ThreadCountDoesNotMatter) {
  const auto s = mg::catalog_surface("null-translation");
  mg::GridSpec grid;
  grid.n_s = grid.n_t = 7;
  const auto a = mg::sample_grid(s, grid, 1);
  const auto b = mg::sample_grid(s, grid, 3);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].point(), b.samples[i].point());
    EXPECT_EQ(a.samples[i].lap2_nu, b.samples[i].lap2_nu);
  }
}
