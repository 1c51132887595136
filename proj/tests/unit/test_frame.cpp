#include <gtest/gtest.h>

#include <cmath>

#include "minkgauss/catalog.hpp"
#include "minkgauss/error.hpp"
#include "minkgauss/frame.hpp"
#include "minkgauss/verify/oracles.hpp"

namespace mg = minkgauss;

namespace {

mg::SurfaceDef degenerate() { return mg::catalog_surface("degenerate-null"); }
mg::SurfaceDef generic() { return mg::catalog_surface("null-translation"); }
mg::SurfaceDef plane() { return mg::catalog_surface("plane"); }

mg::SurfaceDef from_components(const char* x0, const char* x1, const char* x2, const char* x3) {
  mg::SurfaceDef d;
  d.name = "test";
  d.components = {mg::parse(x0), mg::parse(x1), mg::parse(x2), mg::parse(x3)};
  return d;
}

double norm(const mg::Vec4& v) { return mg::euclidean_norm(v); }

void expect_frame_invariants(const mg::FramePoint& fp) {
  EXPECT_NEAR(mg::inner4(fp.f1, fp.f1), 0.0, 1e-10);
  EXPECT_NEAR(mg::inner4(fp.f2, fp.f2), 0.0, 1e-10);
  EXPECT_NEAR(mg::inner4(fp.f1, fp.f2), -1.0, 1e-10);
  EXPECT_NEAR(mg::inner4(fp.e3, fp.e3), 1.0, 1e-10);
  EXPECT_NEAR(mg::inner4(fp.e4, fp.e4), 1.0, 1e-10);
  EXPECT_NEAR(mg::inner4(fp.e3, fp.e4), 0.0, 1e-10);
  for (const auto* f : {&fp.f1, &fp.f2}) {
    EXPECT_NEAR(mg::inner4(*f, fp.e3), 0.0, 1e-10);
    EXPECT_NEAR(mg::inner4(*f, fp.e4), 0.0, 1e-10);
  }
  EXPECT_NEAR(mg::inner6(fp.nu, fp.nu), -1.0, 1e-10);
  EXPECT_NEAR(mg::inner6(fp.mu, fp.mu), 1.0, 1e-10);
  EXPECT_NEAR(mg::inner6(fp.nu, fp.mu), 0.0, 1e-10);
  EXPECT_LT(fp.g.det, 0.0);
  EXPECT_GT(mg::det4(fp.f1, fp.f2, fp.e3, fp.e4), 0.0);
}

}  // namespace

TEST(FrameAt, DegenerateNullSurface) {
  const mg::FramePoint fp = mg::frame_at(degenerate(), {0.3, 0.7});
  expect_frame_invariants(fp);
  EXPECT_LE(norm(fp.H), 1e-12);
  EXPECT_LE(std::abs(fp.h.h3_11), 1e-12);
  EXPECT_LE(std::abs(fp.h.h4_11), 1e-12);
}

TEST(FrameAt, TotallyGeodesicPlane) {
  const mg::FramePoint fp = mg::frame_at(plane(), {0.1, -0.2});
  expect_frame_invariants(fp);
  EXPECT_DOUBLE_EQ(fp.g.det, -4.0);
  EXPECT_EQ(norm(fp.h11) + norm(fp.h12) + norm(fp.h22), 0.0);
  EXPECT_EQ(fp.K, 0.0);
  EXPECT_EQ(fp.KD, 0.0);
}

TEST(FrameAt, Errors) {
  try {
    mg::frame_at(from_components("0", "s", "t", "0"), {0.1, 0.1});
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::NotLorentzian);
  }
  try {
    mg::frame_at(mg::catalog_surface("riemannian-graph"), {0.1, 0.1});
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::NotLorentzian);
  }
  try {
    mg::frame_at(from_components("s + t", "s + t", "0", "0"), {0.1, 0.1});
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::DegenerateImmersion);
  }
  try {
    mg::frame_at(plane(), {0.9, 0.0});
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::OutsideDomain);
  }
}

TEST(FrameAt, InvariantsOnGenericAndNonMinimal) {
  for (const auto& s : {generic(), mg::catalog_surface("nonminimal-graph"),
                        mg::catalog_surface("hyperplane-minimal")}) {
    for (double u : {-0.8, -0.25, 0.0, 0.6}) {
      for (double v : {-0.7, 0.1, 0.8}) {
        SCOPED_TRACE(s.name);
        expect_frame_invariants(mg::frame_at(s, {u, v}));
      }
    }
  }
}

TEST(ShapeOperator, DefiningRelation) {
  const mg::FramePoint fp = mg::frame_at(generic(), {0.2, -0.4});
  for (const mg::Vec4& xi : {fp.e3, fp.e4, fp.e3 * 0.3 + fp.e4 * -1.7}) {
    const mg::Mat2 A = mg::shape_operator(fp, xi);
    // Columns are A f1 and A f2 in the (f1, f2) basis.
    const mg::Vec4 Af1 = fp.f1 * A[0][0] + fp.f2 * A[1][0];
    const mg::Vec4 Af2 = fp.f1 * A[0][1] + fp.f2 * A[1][1];
    EXPECT_NEAR(mg::inner4(Af1, fp.f2), mg::inner4(fp.h12, xi), 1e-10);
    EXPECT_NEAR(mg::inner4(Af1, fp.f1), mg::inner4(fp.h11, xi), 1e-10);
    EXPECT_NEAR(mg::inner4(Af2, fp.f2), mg::inner4(fp.h22, xi), 1e-10);
  }
  try {
    mg::shape_operator(fp, fp.f1);
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::NotNormal);
  }
}

TEST(ShapeOperator, DegenerateSurfaceKillsF1) {
  const mg::FramePoint fp = mg::frame_at(degenerate(), {-0.4, 0.5});
  const mg::Mat2 A = mg::shape_operator(fp, fp.e3);
  EXPECT_NEAR(A[0][0], 0.0, 1e-12);
  EXPECT_NEAR(A[1][0], 0.0, 1e-12);
  const mg::Mat2 P = mg::shape_operator(mg::frame_at(plane(), {0, 0}), {0, 0, 1, 0});
  for (const auto& row : P) {
    for (double x : row) EXPECT_EQ(x, 0.0);
  }
}

TEST(Curvatures, GenericSurfaceAgainstOracles) {
  const mg::ParamPoint p{0.2, -0.4};
  const mg::FramePoint fp = mg::frame_at(generic(), p);
  const double K_oracle = mg::oracle::intrinsic(generic(), p).K;
  EXPECT_NEAR(mg::gaussian_curvature(fp), K_oracle, 1e-9 * std::max(1.0, std::abs(K_oracle)));
  EXPECT_NEAR(fp.K, K_oracle, 1e-9 * std::max(1.0, std::abs(K_oracle)));
  EXPECT_GT(std::abs(fp.KD), 1e-4);
  EXPECT_NEAR(mg::normal_curvature(fp), fp.KD, 1e-9);
  EXPECT_NEAR(mg::oracle::wedge_normal_curvature(fp), fp.KD, 1e-9);
}

TEST(Curvatures, VanishingCases) {
  for (double t : {-0.8, 0.0, 0.35}) {
    const mg::FramePoint fp = mg::frame_at(degenerate(), {0.1, t});
    EXPECT_NEAR(mg::gaussian_curvature(fp), 0.0, 1e-12);
    EXPECT_NEAR(mg::normal_curvature(fp), 0.0, 1e-12);
  }
  const mg::FramePoint hp = mg::frame_at(mg::catalog_surface("hyperplane-minimal"), {0.3, 0.2});
  EXPECT_NEAR(mg::normal_curvature(hp), 0.0, 1e-10);
  EXPECT_GT(std::abs(hp.K), 1e-3);
}

TEST(GaussMaps, Consistency) {
  const mg::SurfaceDef s = generic();
  const mg::FramePoint fp = mg::frame_at(s, {0.3, 0.1});
  const auto [nu, mu] = mg::gauss_maps(fp);
  const mg::Biv6 field = mg::values(mg::nu_field(s, {0.3, 0.1}));
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(nu[i], fp.nu[i], 1e-14);
    EXPECT_NEAR(mu[i], fp.mu[i], 1e-14);
    EXPECT_NEAR(field[i], fp.nu[i], 1e-14);
  }
}

TEST(GaussMaps, PlaneIsConstant) {
  const mg::JetBiv6 nu = mg::nu_field(plane(), {0.2, 0.3});
  for (int i = 0; i < mg::JetBiv6::kSize; ++i) {
    for (std::size_t k = 1; k < nu[i].size(); ++k) EXPECT_EQ(nu[i].data()[k], 0.0L);
  }
  EXPECT_EQ(mg::frame_at(plane(), {0.5, -0.5}).nu, mg::frame_at(plane(), {-0.1, 0.7}).nu);
}

TEST(GaussMaps, DegenerateSurfaceDependsOnTOnly) {
  const mg::JetBiv6 nu = mg::nu_field(degenerate(), {0.2, -0.3});
  for (int i = 0; i < mg::JetBiv6::kSize; ++i) {
    for (int a = 1; a <= nu[i].order(); ++a) {
      for (int b = 0; a + b <= nu[i].order(); ++b) {
        EXPECT_NEAR(nu[i].coeff(a, b), 0.0, 1e-12);
      }
    }
  }
}

TEST(Laplacian, ConstantAndOrder) {
  const mg::JetFrame F = mg::build_frame(generic(), {0.1, 0.2});
  const mg::Jet c = mg::Jet::constant(3.0, {0.1, 0.2});
  EXPECT_EQ(mg::laplacian(c, F).value(), 0.0);
  try {
    mg::laplacian(mg::Jet::constant(1.0, {0.1, 0.2}, 1), F);
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::OrderExhausted);
  }
}

TEST(Laplacian, NullChartFormula) {
  // Null-translation charts have g_ss = g_tt = 0.
  const mg::ParamPoint p{-0.3, 0.45};
  const mg::JetFrame F = mg::build_frame(generic(), p);
  ASSERT_LE(F.g_ss.magnitude(), 1e-15);
  const mg::Jet phi = mg::eval_jet(mg::parse("sin(s)*t^2 + exp(t)"), p, {});
  EXPECT_NEAR(mg::laplacian(phi, F).value(), mg::oracle::null_chart_laplacian(phi, F), 1e-10);
  EXPECT_NEAR(mg::laplacian(phi, F).value(), mg::oracle::frame_laplacian(phi, F).value(), 1e-10);
}

TEST(Laplacian, ProductRule) {
  const mg::ParamPoint p{0.25, -0.15};
  const mg::JetFrame F = mg::build_frame(mg::catalog_surface("nonminimal-graph"), p);
  const mg::Jet phi = mg::eval_jet(mg::parse("cos(s - 2*t) + s*t"), p, {});
  const mg::Jet xi = mg::eval_jet(mg::parse("exp(s)*t^3 - s^2"), p, {});
  const auto grad = mg::gradient_coords(phi, F);
  const mg::Jet dir = grad[0] * xi.derivative(mg::Var::s) + grad[1] * xi.derivative(mg::Var::t);
  const double r = mg::laplacian(phi * xi, F).value() - mg::laplacian(phi, F).value() * xi.value() -
                   phi.value() * mg::laplacian(xi, F).value() + 2.0 * dir.value();
  EXPECT_NEAR(r, 0.0, 1e-10);
}

TEST(Gradient, DefiningPropertyAndConstant) {
  const mg::ParamPoint p{0.4, 0.3};
  const mg::JetFrame F = mg::build_frame(generic(), p);
  const mg::FramePoint fp = F.values();
  const mg::Jet phi = mg::eval_jet(mg::parse("s^3 - sinh(t)*s"), p, {});
  const mg::Vec4 g = mg::gradient(phi, F);
  EXPECT_NEAR(mg::inner4(g, fp.f1), mg::frame_derivative(phi, F, 0).value(), 1e-10);
  EXPECT_NEAR(mg::inner4(g, fp.f2), mg::frame_derivative(phi, F, 1).value(), 1e-10);
  EXPECT_EQ(norm(mg::gradient(mg::Jet::constant(2.0, p), F)), 0.0);
}

TEST(Codazzi, PlaneMinimalAndNonMinimal) {
  EXPECT_EQ(mg::codazzi_residual(mg::build_frame(plane(), {0.3, 0.3})).general, 0.0);
  for (const auto& s : {generic(), degenerate()}) {
    const auto r = mg::codazzi_residual(mg::build_frame(s, {-0.5, 0.2}));
    EXPECT_LE(r.general, 1e-9);
    EXPECT_LE(r.minimal_f1, 1e-9);
    EXPECT_LE(r.minimal_f2, 1e-9);
  }
  const auto nm = mg::codazzi_residual(mg::build_frame(mg::catalog_surface("nonminimal-graph"), {0.2, 0.6}));
  EXPECT_LE(nm.general, 1e-9);
}

TEST(RelativeNullSpace, Examples) {
  const auto pl = mg::relative_null_space(mg::frame_at(plane(), {0, 0}));
  EXPECT_EQ(pl.dimension, 2);
  EXPECT_FALSE(pl.degenerate);

  const mg::FramePoint dp = mg::frame_at(degenerate(), {0.2, 0.6});
  const auto dn = mg::relative_null_space(dp);
  EXPECT_EQ(dn.dimension, 1);
  EXPECT_TRUE(dn.degenerate);
  ASSERT_TRUE(dn.generator.has_value());
  EXPECT_LE(mg::euclidean_norm(mg::wedge(*dn.generator, dp.f1)),
            1e-10 * norm(*dn.generator) * norm(dp.f1));

  const mg::FramePoint gp = mg::frame_at(generic(), {0.2, 0.6});
  EXPECT_EQ(mg::relative_null_space(gp).dimension, 0);
  EXPECT_EQ(mg::oracle::relative_null_dimension(gp, 1e-10), 0);
}

TEST(FrameJets, OrderBookkeeping) {
  const mg::JetFrame F = mg::build_frame(generic(), {0, 0}, 5);
  EXPECT_EQ(F.nu[0].order(), 4);
  EXPECT_EQ(F.K.order(), 3);
  try {
    mg::build_frame(generic(), {0, 0}, 1);
    FAIL();
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), mg::ErrorCode::OrderExhausted);
  }
}
