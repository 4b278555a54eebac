#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cruled/errors.hpp"
#include "cruled/expression.hpp"

using namespace cruled;

TEST(Expression, EvaluatesConstantsAndPrecedence) {
  EXPECT_DOUBLE_EQ(Expression::parse("1 + 2*3").evaluate(0.0), 7.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^3").evaluate(0.0), 8.0);
  EXPECT_DOUBLE_EQ(Expression::parse("(2^3)^2").evaluate(0.0), 64.0);
  EXPECT_DOUBLE_EQ(Expression::parse("-s^2").evaluate(3.0), 9.0);
  EXPECT_DOUBLE_EQ(Expression::parse("4*pi").evaluate(0.0), 4 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(Expression::parse("s/sqrt(2)").evaluate(2.0), std::sqrt(2.0));
}

TEST(Expression, UnclosedCallReportsPosition) {
  try {
    Expression::parse("cos(");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Expression, UnknownFunctionIsDistinguished) {
  try {
    Expression::parse("1 + cosh(s)");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownFunction);
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Expression, RejectsMalformedInput) {
  for (const char* bad : {"", "1 +", "s s", "(s", "s)", "2 ** 3", "sin s", "1.2.3", "s^1.5", "2^3^2", "s^-2"}) {
    EXPECT_THROW(Expression::parse(bad), ParseError) << bad;
  }
}

TEST(Expression, ToStringReparsesToSameValues) {
  for (const char* text : {"sin(s)*cos(2*s)", "-s^2 + 3/(1 + s)", "exp(-s)*atan(s/2)"}) {
    const Expression e = Expression::parse(text);
    const Expression again = Expression::parse(e.to_string());
    for (double s : {0.1, 0.7, 1.9}) EXPECT_DOUBLE_EQ(e.evaluate(s), again.evaluate(s)) << text;
  }
}

TEST(Expression, LogOfNonpositiveThrows) {
  EXPECT_THROW(Expression::parse("log(s)").evaluate(-1.0), GeomError);
}
