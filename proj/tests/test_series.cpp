#include <gtest/gtest.h>

#include <random>

#include "exotic/convolution.hpp"
#include "exotic/enumerate.hpp"
#include "exotic/io.hpp"
#include "exotic/series.hpp"
#include "exotic/stochastic.hpp"
#include "verify_internal.hpp"

using namespace exotic;

TEST(Series, AddCancelsZeros) {
  Series s;
  s.add(parse("b"), 1);
  s.add(parse("b"), -1);
  EXPECT_TRUE(s.empty());
  s.add(parse("b[b]"), Rational(1, 3));
  EXPECT_EQ(s.coeff(parse("b[b]")), Rational(1, 3));
  EXPECT_EQ(s.coeff(parse("b")), 0);
}

TEST(Series, MultiplyIsConcatenation) {
  Series a(parse("b"), 2), b(parse("1,1"), Rational(1, 2));
  const Series p = multiply(a, b);
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p.coeff(parse("b,1,1")), 1);
}

TEST(Series, DeltaSigmaWeights) {
  Functional a(kNoTruncation, false);
  a.set(parse("1,1"), 1);
  EXPECT_EQ(delta_sigma(a).coeff(parse("1,1")), Rational(1, 2));
  EXPECT_EQ(delta_sigma(delta_one()).coeff(Forest()), 1);
  const Series e = delta_sigma(exact_flow_character(2), enumerate(2));
  EXPECT_EQ(e.coeff(parse("b[1,1]")), Rational(1, 4));
  EXPECT_EQ(e.coeff(parse("1,1,2,2")), Rational(1, 8));
}

TEST(Series, DeltaSigmaRoundTrip) {
  std::mt19937_64 rng(3);
  const Functional a = detail::random_functional(rng, 3);
  const auto fs = enumerate(3);
  const Functional b = delta_sigma_inv(delta_sigma(a, fs));
  for (const Forest& f : fs) EXPECT_EQ(a(f), b(f)) << f.key();
}

TEST(Series, CharacterExtension) {
  const Functional a = character_extend({{parse("b"), 1}}, 4);
  EXPECT_EQ(a(parse("b,b")), 1);
  EXPECT_EQ(a(parse("b[b]")), 0);
  std::mt19937_64 rng(5);
  const Functional c = detail::random_character(rng, 3);
  EXPECT_TRUE(is_character(c, enumerate(3)));
  EXPECT_FALSE(is_character(detail::random_functional(rng, 3), enumerate(3)));
}

TEST(Series, ScaleStep) {
  const Functional e = exact_flow_character(3);
  const Functional half = scale_step(e, Rational(1, 2));
  for (const Forest& f : enumerate(3)) EXPECT_EQ(half(f), e(f) * rational_pow(Rational(1, 2), f.order()));
  const Functional zero = scale_step(e, 0);
  for (const Forest& f : enumerate(2)) EXPECT_EQ(zero(f), f.empty() ? 1 : 0);
}

TEST(Io, JsonRoundTrip) {
  std::mt19937_64 rng(11);
  const Series s = delta_sigma(detail::random_functional(rng, 3), enumerate(3));
  ASSERT_FALSE(s.empty());
  const Series back = series_from_json(series_to_json(s));
  EXPECT_EQ(back, s);
  Series t(parse("b[b]"), Rational(-3, 7), 4);
  const Series t2 = series_from_json(series_to_json(t));
  EXPECT_EQ(t2, t);
  EXPECT_EQ(t2.truncation(), 4);
}

TEST(Io, TextAndLatex) {
  Series s(parse("b[1,1]"), Rational(1, 4));
  s.add(parse("b"), -1);
  EXPECT_EQ(format_series(s, Format::text), "-1\tb\n1/4\tb[1,1]\n");
  EXPECT_EQ(format_series(s, Format::latex), "-\\forest{b} +\\frac{1}{4}\\forest{b[1,1]}\n");
  EXPECT_EQ(format_series(Series(), Format::text), "0\n");
}

TEST(Rational, Parsing) {
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}
