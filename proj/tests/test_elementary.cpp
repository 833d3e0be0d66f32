#include <gtest/gtest.h>

#include "exotic/elementary.hpp"
#include "exotic/expr.hpp"
#include "exotic/quadrature.hpp"

using namespace exotic;

TEST(Expr, Derivatives) {
  EXPECT_EQ(partial(parse_expr("sin(x)"), 0), parse_expr("cos(x)"));
  EXPECT_EQ(partial(parse_expr("cos(2*x)"), 0, 4), parse_expr("16*cos(2*x)"));
  const Expr g = parse_expr("sin(x1)*cos(2*x2) + x1^2*sin(3*x2)");
  EXPECT_EQ(partial(partial(g, 0), 1), partial(partial(g, 1), 0));
  EXPECT_EQ(parse_expr("sin(x)^2 + cos(x)^2"), Expr(1));
}

TEST(Elementary, SmallForests) {
  const VectorField f = VectorField::gradient(parse_expr("cos(x)"), 1);
  const Expr phi = parse_expr("sin(2*x)");
  EXPECT_EQ(elementary(parse("b"), f, phi), f.comps[0] * partial(phi, 0));
  EXPECT_EQ(elementary(parse("1,1"), f, phi), partial(phi, 0, 2));
  EXPECT_EQ(elementary(parse("{}"), f, phi), phi);
  EXPECT_EQ(elementary(parse("(b)"), f, phi), partial(f.comps[0], 0) * phi);
}

TEST(Elementary, DisplayedFiveFactorSum) {
  // F(pi)[phi] = sum f^i_{i l1} f^s f^s_{l2} f^j_{l1} phi_{j l2} in d = 2.
  const VectorField f = VectorField::gradient(parse_expr("sin(x1)*cos(x2) + 1/3*cos(2*x1)"), 2);
  const Expr phi = parse_expr("sin(x1) + cos(x1)*sin(x2)");
  Expr want;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int s = 0; s < 2; ++s)
        for (int l1 = 0; l1 < 2; ++l1)
          for (int l2 = 0; l2 < 2; ++l2)
            want += partial(f.comps[i], {i, l1}) * f.comps[s] * partial(f.comps[s], l2) * partial(f.comps[j], l1) *
                    partial(phi, {j, l2});
  const Forest pi = parse("(b[1]),b=b[2],b[1],2");
  EXPECT_EQ(elementary(pi, f, phi), want);
  EXPECT_EQ(index_notation(pi), "sum_{i,j,k,l,m} f^i_{ij} f^k f^k_{l} f^m_{j} phi_{ml}");
}

TEST(Elementary, IndexNotation) {
  EXPECT_EQ(index_notation(parse("b")), "sum_{i} f^i phi_{i}");
  EXPECT_EQ(index_notation(parse("1,1")), "sum_{i} phi_{ii}");
  EXPECT_EQ(index_notation(parse("{}")), "phi");
  EXPECT_EQ(index_notation(parse("(b)")), "sum_{i} f^i_{i} phi");
}

TEST(Elementary, VectorFieldOfATree) {
  const VectorField f = VectorField::gradient(parse_expr("sin(x1) + cos(x2)*sin(x1)"), 2);
  const VectorField g = elementary_field(parse("b[b]"), f);
  for (int i = 0; i < 2; ++i) {
    Expr want;
    for (int j = 0; j < 2; ++j) want += partial(f.comps[i], j) * f.comps[j];
    EXPECT_EQ(g.comps[i], want);
  }
}

TEST(Quadrature, GeneratorIntegratesToZero) {
  const Expr v = parse_expr("sin(x) + 1/4*cos(2*x)");
  const Expr phi = parse_expr("cos(3*x) + sin(x)");
  const VectorField f = VectorField::gradient(v, 1);
  Expr lphi = f.comps[0] * partial(phi, 0);
  Expr half = partial(phi, 0, 2);
  half *= Rational(1, 2);
  lphi += half;
  const QuadratureGrid grid(v, 1, 512);
  EXPECT_LT(std::abs(grid.integrate(lphi)), 1e-12);
  EXPECT_NEAR(grid.integrate(Expr(1)), 1.0, 1e-14);
}

TEST(Quadrature, TwoDimensions) {
  const Expr v = parse_expr("sin(x1) + 1/4*cos(2*x2)");
  const Expr phi = parse_expr("cos(x1)*sin(x2) + cos(x2)");
  const VectorField f = VectorField::gradient(v, 2);
  Expr lphi;
  for (int i = 0; i < 2; ++i) {
    lphi += f.comps[i] * partial(phi, i);
    Expr half = partial(phi, i, 2);
    half *= Rational(1, 2);
    lphi += half;
  }
  const QuadratureGrid grid(v, 2, 128);
  EXPECT_LT(std::abs(grid.integrate(lphi)), 1e-12);
}
