#include <gtest/gtest.h>

#include "golodlab/field.hpp"

using namespace golodlab;

TEST(Field, RationalArithmeticIsExact) {
  Rationals q;
  auto third = q.from_fraction(1, 3);
  EXPECT_EQ(q.add(q.add(third, third), third), q.one());
  EXPECT_EQ(q.from_fraction(6, -4), q.from_fraction(-3, 2));
  EXPECT_THROW(q.from_fraction(1, 0), InputError);
}

TEST(Field, PrimeFieldInverseAndReduction) {
  PrimeField f(101);
  for (std::uint32_t a = 1; a < 101; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.from_int(-1), 100u);
  EXPECT_EQ(f.from_fraction(1, 2), 51u);
  EXPECT_THROW(f.from_fraction(1, 202), InputError);
}

TEST(Field, RejectsCompositeAndHugeCharacteristic) {
  EXPECT_THROW(PrimeField(91), InputError);
  EXPECT_THROW(FieldSpec::parse("p:2147483659"), InputError);
  EXPECT_THROW(FieldSpec::parse("r"), InputError);
  EXPECT_EQ(FieldSpec::parse("p:2147483647").prime, 2147483647u);
  EXPECT_EQ(FieldSpec::parse("Q").kind, FieldKind::rationals);
}

TEST(Field, LargePrimeMultiplicationDoesNotOverflow) {
  PrimeField f(2147483647u);
  std::uint32_t a = 2147483646u;
  EXPECT_EQ(f.mul(a, a), 1u);
}
