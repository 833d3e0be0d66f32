#include <gtest/gtest.h>

#include <random>

#include "exotic/convolution.hpp"
#include "exotic/elementary.hpp"
#include "exotic/enumerate.hpp"
#include "exotic/hopf.hpp"
#include "exotic/stochastic.hpp"
#include "exotic/verify.hpp"
#include "verify_internal.hpp"

using namespace exotic;

namespace {

Expr term(const Functional& a, int k, const VectorField& f, const Expr& psi) {
  Expr out;
  for (const Forest& pi : forests_of_order(k)) {
    Rational c = a(pi) / Rational(symmetry_sigma(pi));
    if (c == 0) continue;
    Expr e = elementary(pi, f, psi);
    e *= c;
    out += e;
  }
  return out;
}

// Generator applied directly: L psi = sum f_i d_i psi + 1/2 sum d_ii psi.
Expr generator(const VectorField& f, const Expr& psi) {
  Expr out;
  for (int i = 0; i < f.dim(); ++i) {
    out += f.comps[static_cast<std::size_t>(i)] * partial(psi, i);
    Expr lap = partial(psi, i, 2);
    lap *= Rational(1, 2);
    out += lap;
  }
  return out;
}

struct Setting {
  Expr v = parse_expr("sin(x1) + 1/4*cos(2*x2)");
  Expr phi = parse_expr("sin(x1)*cos(x2) + cos(x2)");
  VectorField f = VectorField::gradient(v, 2);
};

}  // namespace

TEST(Laws, GeneratorSeries) {
  const Setting s;
  EXPECT_EQ(term(generator_character(), 1, s.f, s.phi), generator(s.f, s.phi));
  EXPECT_TRUE(term(generator_character(), 2, s.f, s.phi).is_zero());
  const VectorField f1 = VectorField::gradient(parse_expr("cos(x)"), 1);
  const Expr p1 = parse_expr("sin(2*x)");
  Expr want = f1.comps[0] * partial(p1, 0);
  Expr half = partial(p1, 0, 2);
  half *= Rational(1, 2);
  EXPECT_EQ(term(generator_character(), 1, f1, p1), want + half);
}

TEST(Laws, ExactFlowIsTheExponentialOfTheGenerator) {
  // S(e) = exp(hL): h^k coefficient is L^k phi / k!.
  const Setting s;
  const Functional e = exact_flow_character(3);
  Expr lk = s.phi;
  Rational fact = 1;
  for (int k = 1; k <= 3; ++k) {
    lk = generator(s.f, lk);
    fact *= k;
    Expr want = lk;
    want *= 1 / fact;
    EXPECT_EQ(term(e, k, s.f, s.phi), want) << "h^" << k;
  }
}

TEST(Laws, CompositionAndSubstitution) {
  const CheckResult c = check_composition_law(5, 3);
  EXPECT_TRUE(c.passed) << c.detail;
  const CheckResult d = check_substitution_law(5, 3);
  EXPECT_TRUE(d.passed) << d.detail;
}

TEST(Laws, SwappedCompositionIsDetected) {
  // The law check must fail for b * a in place of a * b.
  const Setting s;
  std::mt19937_64 rng(9);
  const Functional a = detail::random_character(rng, 3);
  const Functional b = detail::random_character(rng, 3);
  const Functional wrong = compose(b, a);
  bool differs = false;
  for (int k = 0; k <= 3; ++k) {
    Expr lhs;
    for (int i = 0; i <= k; ++i) lhs += term(a, i, s.f, term(b, k - i, s.f, s.phi));
    differs = differs || lhs != term(wrong, k, s.f, s.phi);
  }
  EXPECT_TRUE(differs);
}

TEST(Laws, HalfStepsOfTheExactFlow) {
  // e_{1/2} * e_{1/2} = e.
  const Functional e = exact_flow_character(3);
  const Functional half = scale_step(e, Rational(1, 2));
  const Functional two = compose(half, half);
  for (const Forest& f : enumerate(3)) EXPECT_EQ(two(f), e(f)) << f.key();
}

TEST(Convolution, Examples) {
  Functional l = generator_character();
  l.set_truncation(3);
  EXPECT_EQ(compose(l, l)(parse("b[b]")), 1);
  EXPECT_EQ(compose(l, l)(parse("b,b")), 2);
  // delta_1 is a two-sided unit.
  std::mt19937_64 rng(2);
  const Functional a = detail::random_character(rng, 3);
  for (Coproduct c : {Coproduct::deshuffle, Coproduct::bck}) {
    const Functional left = convolve(c, delta_one(), a), right = convolve(c, a, delta_one());
    for (const Forest& f : enumerate(3)) {
      EXPECT_EQ(left(f), a(f)) << f.key();
      EXPECT_EQ(right(f), a(f)) << f.key();
    }
  }
}

TEST(Convolution, ExpLogInverse) {
  std::mt19937_64 rng(4);
  for (Coproduct c : {Coproduct::deshuffle, Coproduct::bck}) {
    Functional a0 = detail::random_functional(rng, 4);
    a0.set(Forest(), 0);
    const Functional back = log_conv(c, exp_conv(c, a0));
    for (const Forest& f : enumerate(4)) ASSERT_EQ(back(f), a0(f)) << f.key();
  }
}

TEST(Convolution, ExponentialsAreCharacters) {
  Functional l = generator_character();
  l.set_truncation(3);
  EXPECT_TRUE(is_character(exp_conv(Coproduct::bck, l), enumerate(3)));
  const Functional em = exp_conv(Coproduct::deshuffle, l);
  EXPECT_TRUE(is_character(em, enumerate(3)));
  const Functional srk = srk_character(named_tableau("em"), 3);
  for (const Forest& f : enumerate(3)) EXPECT_EQ(em(f), srk(f)) << f.key();
}

TEST(Substitution, UnitAndGenerator) {
  std::mt19937_64 rng(8);
  const Functional a = detail::random_character(rng, 3);
  Functional bullet = delta_bullet();
  bullet.set_truncation(3);
  const Functional same = substitute(bullet, a);
  for (const Forest& f : enumerate(3)) {
    if (f.grading().num_lianas > 0) continue;
    EXPECT_EQ(same(f), a(f)) << f.key();
  }
}
