#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "exotic/enumerate.hpp"
#include "exotic/hopf.hpp"
#include "exotic/ibp.hpp"
#include "exotic/stochastic.hpp"
#include "verify_internal.hpp"

using namespace exotic;

namespace {

Series S(std::initializer_list<std::pair<const char*, Rational>> terms) {
  Series s;
  for (const auto& [k, c] : terms) s.add(parse(k), c);
  return s;
}

// Each h-power of the F-weighted series of x integrates to zero against
// exp(-2V) for the test potentials.
void expect_equivalent_to_zero(const Functional& x, int max_order, double tol) {
  for (const auto& [v, phi] : detail::test_potentials()) {
    detail::IntegralCache cache(parse_expr(v), parse_expr(phi), 1, 2048);
    for (int k = 1; k <= max_order; ++k) {
      const QuadratureResult q = cache.integrate(delta_sigma(x, forests_of_order(k)));
      EXPECT_LE(std::abs(q.value), tol * std::max(q.scale, 1e-300)) << "order " << k << ", V = " << v;
    }
  }
}

}  // namespace

TEST(Srk, EulerMaruyamaSeries) {
  const Series em = delta_sigma(srk_character(named_tableau("em"), 2), enumerate(2));
  EXPECT_EQ(em, S({{"{}", 1}, {"b", 1}, {"1,1", Rational(1, 2)}, {"b,b", Rational(1, 2)},
                   {"b,1,1", Rational(1, 2)}, {"1,1,2,2", Rational(1, 8)}}));
}

TEST(Srk, ZeroTableau) {
  const Functional z = srk_character(parse_tableau("s = 1\nA = 0\nb = 0\nd = 0\nd0 = 0"), 3);
  for (const Forest& f : enumerate(3)) EXPECT_EQ(z(f), f.empty() ? 1 : 0) << f.key();
}

TEST(Srk, WeightMatchesIndexSum) {
  // a(tau) = sum b_i a_ij d_j^2 d_i b_k a_kl a_km for b[b[1,2],1],2,b[b,b].
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    SRKTableau t;
    t.s = 2;
    t.A.assign(2, std::vector<Rational>(2));
    for (auto& row : t.A)
      for (auto& x : row) x = detail::random_rational(rng);
    t.b = {detail::random_rational(rng), detail::random_rational(rng)};
    t.d = {detail::random_rational(rng), detail::random_rational(rng)};
    Rational sum = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            for (int m = 0; m < 2; ++m)
              sum += t.b[i] * t.A[i][j] * t.d[j] * t.d[j] * t.d[i] * t.b[k] * t.A[k][l] * t.A[k][m];
    EXPECT_EQ(srk_weight(t, parse("b[b[1,2],1],2,b[b,b]")), sum);
  }
}

TEST(Srk, TableauTextRoundTrip) {
  const SRKTableau t = named_tableau("trapezoid");
  const SRKTableau u = parse_tableau(format_tableau(t));
  EXPECT_EQ(u.A, t.A);
  EXPECT_EQ(u.b, t.b);
  EXPECT_EQ(u.d, t.d);
  EXPECT_EQ(u.d0, t.d0);
  EXPECT_THROW(parse_tableau("s = 2\nA = 0\nb = 1\nd = 0"), std::invalid_argument);
}

TEST(Orders, WeakOrder) {
  const OrderReport em = check_weak_order(srk_character(named_tableau("em"), 3), 2);
  EXPECT_EQ(em.order, 1);
  EXPECT_EQ(em.defect.coeff(parse("b[b]")), Rational(-1, 2));
  EXPECT_EQ(check_weak_order(srk_character(named_tableau("trapezoid"), 3), 3).order, 2);
  EXPECT_EQ(check_weak_order(exact_flow_character(4), 4).order, 4);
}

TEST(Orders, InvariantMeasure) {
  EXPECT_EQ(invariant_measure_order(srk_character(named_tableau("em"), 3), 3).order, 1);
  EXPECT_EQ(invariant_measure_order(srk_character(named_tableau("lm"), 3), 3).order, 1);
  EXPECT_TRUE(invariant_measure_order(exact_flow_character(3), 3).passed());
  const Functional lm = srk_character(named_tableau("lm"), 3);
  EXPECT_EQ(postprocessor_check(lm, srk_character(named_tableau("lm-post"), 3), 2).order, 2);
  // Trivial postprocessor reduces to the plain check.
  Functional one = delta_one();
  one.set_truncation(3);
  EXPECT_EQ(postprocessor_check(lm, one, 3).order, invariant_measure_order(lm, 3).order);
}

TEST(Orders, RandomPostprocessorFails) {
  std::mt19937_64 rng(12);
  const Functional lm = srk_character(named_tableau("lm"), 3);
  int failures = 0;
  for (int k = 0; k < 5; ++k) {
    Functional abar = detail::random_character(rng, 2);
    abar.set_truncation(3);
    failures += postprocessor_check(lm, abar, 2).passed() ? 0 : 1;
  }
  EXPECT_EQ(failures, 5);
}

TEST(Ibp, MapOnEulerMaruyamaDefect) {
  const Functional diff = srk_character(named_tableau("em"), 2) - exact_flow_character(2);
  Functional x(2, false);
  for (const Forest& f : forests_of_order(2)) x.set(f, diff(f));
  const IBPMap m = ibp_map(x, 2);
  EXPECT_TRUE(m.residual.empty());
  EXPECT_EQ(tree_series(m.value, 2), S({{"b[b]", Rational(1, 2)}, {"b[1,1]", Rational(1, 4)}}));
  Functional tree(3, false);
  tree.set(parse("b[b[1,1]]"), 3);
  EXPECT_EQ(ibp_map(tree, 3).value(parse("b[b[1,1]]")), 3);
}

TEST(Bea, EulerMaruyamaField) {
  const Functional em = srk_character(named_tableau("em"), 3);
  const ModifiedField mf = bea_modified_field(em, 3);
  EXPECT_TRUE(mf.residual.empty());
  // Order-three value of b[1,1,2,2] is 1/48, checked by quadrature below.
  EXPECT_EQ(tree_series(mf.b, 3),
            S({{"b", 1}, {"b[b]", Rational(1, 2)}, {"b[1,1]", Rational(1, 4)}, {"b[b[b]]", Rational(-1, 2)},
               {"b[b,b]", Rational(1, 12)}, {"b[b[1,1]]", Rational(-1, 4)}, {"b[1,b[1]]", Rational(-1, 12)},
               {"b[1,1,b]", Rational(1, 12)}, {"b[1,1,2,2]", Rational(1, 48)}}));
  // b_c star e ~ a.
  Functional b = mf.b;
  b.set_truncation(3);
  expect_equivalent_to_zero(substitute(b, exact_flow_character(3)) - em, 3, 1e-9);
}

TEST(Bea, ReferenceOrderThreeValueIsNotEquivalent) {
  Functional b = bea_modified_field(srk_character(named_tableau("em"), 3), 3).b;
  b.set(parse("b[1,1,2,2]"), Rational(1, 12) * 8);
  b.set_truncation(3);
  const Functional x = substitute(b, exact_flow_character(3)) - srk_character(named_tableau("em"), 3);
  detail::IntegralCache cache(parse_expr("sin(x) + 1/4*cos(2*x)"), parse_expr("cos(2*x)"), 1, 2048);
  const QuadratureResult q = cache.integrate(delta_sigma(x, forests_of_order(3)));
  EXPECT_GT(std::abs(q.relative()), 1e-3);
}

TEST(Bea, ClosedFormulaMatchesRecursion) {
  for (const char* m : {"em", "lm", "trapezoid"}) {
    const Functional a = srk_character(named_tableau(m), 3);
    const ModifiedField r = bea_modified_field(a, 3, BEAMethod::recursion);
    const ModifiedField c = bea_modified_field(a, 3, BEAMethod::closed);
    EXPECT_EQ(tree_series(r.b, 3), tree_series(c.b, 3)) << m;
  }
}

TEST(Bea, ExactFlowHasTrivialField) {
  const ModifiedField mf = bea_modified_field(exact_flow_character(3), 3);
  EXPECT_EQ(tree_series(mf.b, 3), S({{"b", 1}}));
}

TEST(ModifiedEquation, EulerMaruyama) {
  const Functional em = srk_character(named_tableau("em"), 3);
  const ModifiedField mf = modified_equation(em, 3);
  EXPECT_TRUE(mf.residual.empty());
  const Series t = tree_series(mf.b, 3);
  const Series bea = tree_series(bea_modified_field(em, 3).b, 3);
  EXPECT_EQ(t.coeff(parse("b")), 1);
  for (const Forest& f : forests_of_order(2)) EXPECT_EQ(t.coeff(f), -bea.coeff(f)) << f.key();
  Functional b = mf.b;
  b.set_truncation(3);
  expect_equivalent_to_zero(substitute(b, em) - delta_one(), 3, 1e-9);
  EXPECT_TRUE(invariant_measure_order(substitute(b, em), 3).passed());
}

TEST(ModifiedEquation, RoundTripThroughBea) {
  // The exact flow of the BEA field of a method is a method with the same
  // invariant measure order behaviour: its modified equation recovers it.
  const Functional em = srk_character(named_tableau("em"), 3);
  Functional b = bea_modified_field(em, 3).b;
  b.set_truncation(3);
  const Functional flow = substitute(b, exact_flow_character(3));
  EXPECT_TRUE(equivalent_to_zero(flow - em, 3).passed());
}
