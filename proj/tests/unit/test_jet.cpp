#include <gtest/gtest.h>

#include <cmath>

#include "minkgauss/error.hpp"
#include "minkgauss/jet.hpp"
#include "minkgauss/verify/oracles.hpp"

namespace mg = minkgauss;
using mg::Jet;
using mg::Var;

namespace {

void expect_code(mg::ErrorCode code, const auto& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << mg::to_string(code);
  } catch (const mg::Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(JetVariable, Coefficients) {
  const Jet s = Jet::variable(Var::s, {0.3, 0.7});
  EXPECT_EQ(s.coeff(0, 0), 0.3);
  EXPECT_EQ(s.coeff(1, 0), 1.0);
  EXPECT_EQ(s.coeff(0, 1), 0.0);
  EXPECT_EQ(s.coeff(2, 0), 0.0);
  const Jet t = Jet::variable(Var::t, {0, 0});
  EXPECT_EQ(t.coeff(0, 0), 0.0);
  EXPECT_EQ(t.coeff(0, 1), 1.0);
  EXPECT_EQ(Jet::variable(Var::s, {1, 2}).partial(1, 0), 1.0);
}

TEST(JetArithmetic, AddNegIsZero) {
  const mg::ParamPoint p{0.4, -0.2};
  const Jet a = mg::sin(Jet::variable(Var::s, p)) * Jet::variable(Var::t, p);
  const Jet z = a + (-a);
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_EQ(z.data()[i], 0.0L);
}

TEST(JetArithmetic, Partials) {
  const mg::ParamPoint p{0.5, 1.5};
  const Jet s = Jet::variable(Var::s, p), t = Jet::variable(Var::t, p);
  EXPECT_EQ((s * t).partial(1, 1), 1.0);
  EXPECT_EQ((s * s).partial(2, 0), 2.0);
  const Jet e = mg::exp(s + t);
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; a + b <= 5; ++b) {
      EXPECT_NEAR(e.partial(a, b), std::exp(2.0), 1e-12 * std::exp(2.0));
    }
  }
}

TEST(JetDivision, ReciprocalOfS) {
  const Jet s = Jet::variable(Var::s, {2, 0}, 3);
  const Jet q = 1.0 / s;
  EXPECT_DOUBLE_EQ(q.coeff(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(q.coeff(1, 0), -0.25);
  EXPECT_DOUBLE_EQ(q.coeff(2, 0), 0.125);
  EXPECT_DOUBLE_EQ(q.coeff(3, 0), -0.0625);
}

TEST(JetDivision, NearZeroAndMismatchedBase) {
  const Jet s = Jet::variable(Var::s, {0, 0});
  expect_code(mg::ErrorCode::DivisionNearZero, [&] { return 1.0 / s; });
  const Jet other = Jet::variable(Var::s, {0.1, 0});
  expect_code(mg::ErrorCode::MismatchedBase, [&] { return s + other; });
}

TEST(JetFunctions, SineMaclaurin) {
  const Jet j = mg::sin(Jet::variable(Var::s, {0, 0}));
  EXPECT_DOUBLE_EQ(j.coeff(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(j.coeff(3, 0), -1.0 / 6.0);
  EXPECT_DOUBLE_EQ(j.coeff(5, 0), 1.0 / 120.0);
  for (int k : {0, 2, 4}) EXPECT_EQ(j.coeff(k, 0), 0.0);
  const Jet one = mg::exp(Jet::constant(0.0, {0, 0}));
  EXPECT_EQ(one.value(), 1.0);
  for (std::size_t i = 1; i < one.size(); ++i) EXPECT_EQ(one.data()[i], 0.0L);
}

TEST(JetFunctions, CoshMatchesFiniteDifferences) {
  const mg::ParamPoint p{0, 0.5};
  const Jet j = mg::cosh(Jet::variable(Var::t, p));
  const mg::oracle::ScalarField f = [](mg::ParamPoint q) { return std::cosh(q.t); };
  for (int b = 1; b <= 3; ++b) {
    const double fd = mg::oracle::fd_partial(f, p, 0, b, 1e-3);
    EXPECT_NEAR(j.partial(0, b), fd, 1e-5 * std::abs(fd)) << "order " << b;
  }
}

TEST(JetFunctions, DomainErrors) {
  const Jet neg = Jet::constant(-1.0, {0, 0});
  expect_code(mg::ErrorCode::DomainError, [&] { return mg::sqrt(neg); });
  expect_code(mg::ErrorCode::DomainError, [&] { return mg::log(neg); });
}

TEST(JetOrder, ExceededAndExhausted) {
  expect_code(mg::ErrorCode::OrderExceeded, [] { return Jet(Jet::kMaxOrder + 1, {0, 0}); });
  const Jet s = Jet::variable(Var::s, {0, 0}, 2);
  expect_code(mg::ErrorCode::OrderExceeded, [&] { return s.coeff(3, 0); });
  expect_code(mg::ErrorCode::OrderExhausted,
              [&] { return Jet::constant(1.0, {0, 0}, 0).derivative(Var::s); });
}

TEST(JetOrder, MixedOrdersTruncate) {
  const Jet a = Jet::variable(Var::s, {0, 0}, 5);
  const Jet b = Jet::variable(Var::t, {0, 0}, 2);
  EXPECT_EQ((a * b).order(), 2);
  EXPECT_EQ(a.derivative(Var::s).order(), 4);
}

TEST(JetPow, IntegerPowers) {
  const Jet s = Jet::variable(Var::s, {1.5, 0});
  const Jet c = mg::pow(s, 3);
  EXPECT_DOUBLE_EQ(c.value(), 3.375);
  EXPECT_DOUBLE_EQ(c.partial(1, 0), 3 * 2.25);
  EXPECT_DOUBLE_EQ(c.partial(3, 0), 6.0);
  EXPECT_DOUBLE_EQ(mg::pow(s, -1).value(), 1.0 / 1.5);
}
