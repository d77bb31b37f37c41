#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace golodlab;
using namespace testing_helpers;

TEST(Poly, ParseBasics) {
  auto r = ring({"x", "y"});
  auto p = P(r, "x^2 + 2*x*y");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_TRUE(P(r, "0").is_zero());
  EXPECT_EQ(P(r, " ( x + y ) * ( x - y ) "), P(r, "x^2 - y^2"));
  EXPECT_TRUE((P(r, "x*y - 3") + P(r, "-1") * P(r, "x*y - 3")).is_zero());
}

TEST(Poly, ParseOverFiniteField) {
  auto r = ring_p(3, {"x"});
  EXPECT_EQ(P(r, "x^3").leading_coeff(), 1u);
  EXPECT_TRUE(P(r, "3*x^3").is_zero());
  auto r2 = ring_p(2, {"x", "y"});
  EXPECT_EQ(P(r2, "(x+y)^2"), P(r2, "x^2 + y^2"));
  EXPECT_THROW(P(r, "x/3"), InputError);
}

TEST(Poly, ParseErrorsCarryPosition) {
  auto r = ring({"x", "y"});
  try {
    P(r, "x + 2z");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  try {
    P(r, "x + z");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
    EXPECT_NE(std::string(e.what()).find("unknown variable"), std::string::npos);
  }
  EXPECT_THROW(P(r, "x + "), ParseError);
  EXPECT_THROW(P(r, "(x"), ParseError);
  EXPECT_THROW(P(r, "x^y"), ParseError);
  EXPECT_THROW(P(r, "x y"), ParseError);
  EXPECT_THROW(P(r, ""), ParseError);
  EXPECT_THROW(P(r, "x # y"), ParseError);
}

TEST(Poly, WeightedDegree) {
  auto r = ring({"x", "y"});
  EXPECT_EQ(P(r, "x^2*y").weighted_degree().degree, 3);
  auto w = ring({"x", "y"}, {2, 1});
  auto d = P(w, "x + y^2").weighted_degree();
  EXPECT_TRUE(d.is_homogeneous());
  EXPECT_EQ(d.degree, 2);
  EXPECT_EQ(P(w, "x + y").weighted_degree().kind, DegreeInfo::Kind::not_homogeneous);
  EXPECT_EQ(P(w, "0").weighted_degree().kind, DegreeInfo::Kind::zero);
}

TEST(Poly, PartialDerivatives) {
  auto r = ring({"x", "y"});
  EXPECT_EQ(P(r, "x^3").partial_derivative(0), P(r, "3*x^2"));
  EXPECT_EQ(P(r, "x^2*y").partial_derivative(1), P(r, "x^2"));
  auto r3 = ring_p(3, {"x"});
  EXPECT_TRUE(P(r3, "x^3").partial_derivative(0).is_zero());
}

TEST(Poly, DerivativeIdeal) {
  auto r1 = ring({"x"});
  auto d1 = derivative_ideal(ideal(r1, {"x^3"}));
  ASSERT_EQ(d1.generators().size(), 1u);
  EXPECT_EQ(d1.generators()[0], P(r1, "3*x^2"));
  auto r = ring({"x", "y"});
  GroebnerBasis<Rationals> a(derivative_ideal(ideal(r, {"x^2", "y^2"})));
  GroebnerBasis<Rationals> b(ideal(r, {"x", "y"}));
  EXPECT_EQ(a.basis(), b.basis());
  GroebnerBasis<Rationals> c(derivative_ideal(ideal(r, {"x*y"})));
  EXPECT_EQ(c.basis(), b.basis());
}

TEST(Poly, RejectsNonHomogeneousGenerators) {
  auto r = ring({"x", "y"});
  EXPECT_THROW(ideal(r, {"x + y^2"}), InputError);
  EXPECT_THROW(make_ring<Rationals>(Rationals{}, {"x", "x"}, {1, 1}), InputError);
  EXPECT_THROW(make_ring<Rationals>(Rationals{}, {"x"}, {0}), InputError);
}

TEST(Poly, RingMismatchIsAnError) {
  auto r = ring({"x", "y"});
  auto s = ring({"x", "z"});
  EXPECT_THROW(P(r, "x") + P(s, "x"), InputError);
}

// ---- properties

class PolyProperty : public ::testing::TestWithParam<int> {};

TEST_P(PolyProperty, PrintParseRoundTrip) {
  std::mt19937 rng(GetParam());
  auto r = ring({"x", "y", "z"}, {1, 2, 3});
  for (int i = 0; i < 30; ++i) {
    auto p = random_homogeneous(r, i % 7, rng).scale(Rationals{}.from_fraction(1 + i % 3, 1 + i % 4)) +
             random_homogeneous(r, (i + 3) % 5, rng);
    EXPECT_EQ(P(r, p.to_string()), p) << p.to_string();
  }
  auto rp = ring_p(101, {"a", "b"});
  for (int i = 0; i < 30; ++i) {
    auto p = random_homogeneous(rp, i % 6, rng);
    EXPECT_EQ(P(rp, p.to_string()), p) << p.to_string();
  }
}

TEST_P(PolyProperty, LeibnizRule) {
  std::mt19937 rng(GetParam());
  auto r = ring({"x", "y", "z"}, {1, 1, 2});
  for (int i = 0; i < 20; ++i) {
    auto p = random_homogeneous(r, 1 + i % 4, rng);
    auto q = random_homogeneous(r, 2 + i % 3, rng);
    for (std::size_t v = 0; v < 3; ++v) {
      EXPECT_EQ((p * q).partial_derivative(v),
                p * q.partial_derivative(v) + q * p.partial_derivative(v));
    }
  }
}

TEST_P(PolyProperty, EulerIdentityAndIdealContainment) {
  std::mt19937 rng(GetParam());
  auto r = ring({"x", "y", "z"}, {1, 2, 3});
  for (int i = 0; i < 15; ++i) {
    std::int64_t d = 2 + i % 5;
    auto p = random_homogeneous(r, d, rng);
    Poly<Rationals> euler(r);
    for (std::size_t v = 0; v < 3; ++v) {
      euler = euler + (Poly<Rationals>::variable(r, v) * p.partial_derivative(v))
                          .scale(Rationals{}.from_int(r->weights()[v]));
    }
    EXPECT_EQ(euler, p.scale(Rationals{}.from_int(d)));
    if (p.is_zero()) continue;
    HomogeneousIdeal<Rationals> single(r, {p});
    GroebnerBasis<Rationals> dg(derivative_ideal(single));
    EXPECT_TRUE(dg.contains(p));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PolyProperty, ::testing::Values(1, 2, 3, 4));
