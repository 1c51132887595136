#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "minkgauss/mink.hpp"
#include "minkgauss/verify/oracles.hpp"

namespace mg = minkgauss;

namespace {

mg::Vec4 e(int i) { return mg::basis_vec4(i); }

}  // namespace

TEST(Inner4, BasisAndNullVectors) {
  EXPECT_EQ(mg::inner4(e(0), e(0)), -1.0);
  EXPECT_EQ(mg::inner4(mg::Vec4{1, 1, 0, 0}, mg::Vec4{1, 1, 0, 0}), 0.0);
  EXPECT_EQ(mg::inner4(e(1), e(2)), 0.0);
}

TEST(Wedge, BasisAntisymmetryBilinearity) {
  EXPECT_EQ(mg::wedge(e(0), e(1)), (mg::Biv6{1, 0, 0, 0, 0, 0}));
  const mg::Vec4 u{0.3, -1.2, 2.0, 0.7};
  EXPECT_EQ(mg::wedge(u, u), mg::Biv6{});
  const mg::Biv6 w = mg::wedge(e(0) + e(1), e(0) - e(1));
  EXPECT_EQ(w, mg::wedge(e(0), e(1)) * -2.0);
}

TEST(Inner6, PluckerBasis) {
  EXPECT_EQ(mg::inner6(mg::wedge(e(0), e(1)), mg::wedge(e(0), e(1))), -1.0);
  EXPECT_EQ(mg::inner6(mg::wedge(e(2), e(3)), mg::wedge(e(2), e(3))), 1.0);
  EXPECT_EQ(mg::inner6(mg::wedge(e(0), e(1)), mg::wedge(e(2), e(3))), 0.0);
}

TEST(Inner6, PluckerIdentityRandom) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  auto vec = [&] { return mg::Vec4{u(rng), u(rng), u(rng), u(rng)}; };
  for (int k = 0; k < 200; ++k) {
    const auto a = vec(), b = vec(), c = vec(), d = vec();
    const double lhs = mg::inner6(mg::wedge(a, b), mg::wedge(c, d));
    const double rhs = mg::inner4(a, c) * mg::inner4(b, d) - mg::inner4(a, d) * mg::inner4(b, c);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(LightlikeDependent, Examples) {
  EXPECT_TRUE(mg::lightlike_dependent({1, 1, 0, 0}, {2, 2, 0, 0}));
  EXPECT_FALSE(mg::lightlike_dependent({1, 1, 0, 0}, {1, -1, 0, 0}));
  EXPECT_FALSE(mg::lightlike_dependent({1, 1, 0, 0}, {1, 0, 1, 0}));
  EXPECT_EQ(mg::oracle::rank_by_minors({1, 1, 0, 0}, {1, 0, 1, 0}, 1e-12), 2);
}

TEST(LightlikeDependent, AgreesWithRankOnRandomNullPairs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0, 6.283185307179586);
  std::uniform_real_distribution<double> scale(0.2, 3.0);
  auto null_vec = [&](double th, double ph) {
    return mg::Vec4{1, std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  };
  for (int k = 0; k < 200; ++k) {
    const double th = ang(rng), ph = ang(rng);
    const mg::Vec4 u = null_vec(th, ph) * scale(rng);
    const mg::Vec4 v = k % 2 == 0 ? u * scale(rng) : null_vec(ang(rng), ang(rng)) * scale(rng);
    const bool dependent = mg::oracle::rank_by_minors(u, v, 1e-9) < 2;
    EXPECT_EQ(mg::lightlike_dependent(u, v, 1e-9), dependent) << "case " << k;
  }
}

TEST(DegenerateSubspace, Examples) {
  const std::vector<mg::Vec4> null_line{{1, 1, 0, 0}};
  const std::vector<mg::Vec4> lorentz_plane{e(0), e(1)};
  const std::vector<mg::Vec4> null_plane{{1, 1, 0, 0}, e(2)};
  EXPECT_TRUE(mg::is_degenerate_subspace(null_line));
  EXPECT_FALSE(mg::is_degenerate_subspace(lorentz_plane));
  EXPECT_TRUE(mg::is_degenerate_subspace(null_plane));
  EXPECT_EQ(mg::oracle::radical_dimension(null_plane), 1);
  EXPECT_EQ(mg::oracle::radical_dimension(lorentz_plane), 0);
}

TEST(OrthonormalizePair, Examples) {
  {
    const auto [a, b] = mg::orthonormalize_pair(e(2), e(3));
    EXPECT_EQ(a, e(2));
    EXPECT_EQ(b, e(3));
  }
  {
    const auto [a, b] = mg::orthonormalize_pair(mg::Vec4{0, 0, 2, 0}, mg::Vec4{0, 0, 1, 1});
    EXPECT_EQ(a, e(2));
    EXPECT_EQ(b, e(3));
  }
  {
    const auto [a, b] = mg::orthonormalize_pair(mg::Vec4{1, 0, 2, 0}, mg::Vec4{1, 0, 0, 2});
    EXPECT_NEAR(mg::inner4(a, a), 1.0, 1e-12);
    EXPECT_NEAR(mg::inner4(b, b), 1.0, 1e-12);
    EXPECT_NEAR(mg::inner4(a, b), 0.0, 1e-12);
  }
}

TEST(OrthonormalizePair, RejectsIndefinitePlane) {
  try {
    mg::orthonormalize_pair(e(0), e(1));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const mg::Error& err) {
    EXPECT_EQ(err.code(), mg::ErrorCode::NotPositiveDefinite);
  }
}
