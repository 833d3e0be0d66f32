#include <gtest/gtest.h>

#include "exotic/enumerate.hpp"
#include "exotic/ibp.hpp"
#include "exotic/verify.hpp"
#include "verify_internal.hpp"

using namespace exotic;

namespace {

Series S(std::initializer_list<std::pair<const char*, int>> terms) {
  Series s;
  for (const auto& [k, c] : terms) s.add(parse(k), c);
  return s;
}

}  // namespace

TEST(Ibp, DisplayedRelations) {
  EXPECT_EQ(ibp_step(parse("1,1"), 0), S({{"b", -2}}));
  const Forest a = parse("b[1],1");
  EXPECT_EQ(ibp_step(a, ibp_default_root(a)), S({{"b[1,1]", -1}, {"b[b]", -2}}));
  const Forest c = parse("b[1,2],1,2");
  EXPECT_EQ(ibp_step(c, ibp_default_root(c)), S({{"b[1,2,2],1", -1}, {"b[1,b],1", -2}}));
}

TEST(Ibp, BareRootElimination) {
  const Forest f = parse("b,b[b]");
  int bare = -1;
  for (int r : f.data().roots)
    if (f.data().preds[static_cast<std::size_t>(r)].empty()) bare = r;
  ASSERT_GE(bare, 0);
  EXPECT_EQ(ibp_step(f, bare), S({{"b[b,b]", -1}, {"b[b[b]]", -1}, {"(b),b[b]", -1}, {"b=b,b[b]", -2}}));
}

TEST(Ibp, SingleRootIsLeftAlone) {
  EXPECT_EQ(ibp_default_root(parse("b[b]")), -1);
  const IBPNormalForm nf = ibp_normalize(S({{"b[b]", 3}, {"b[1,1]", -1}}));
  EXPECT_EQ(nf.trees, S({{"b[b]", 3}, {"b[1,1]", -1}}));
  EXPECT_TRUE(nf.clean());
}

TEST(Ibp, NormalFormsUpToOrderThree) {
  // Trees carry every term with a derivative of phi; what remains has no
  // root (phi undifferentiated) and cannot be rewritten into trees.
  for (int n = 1; n <= 3; ++n)
    for (const Forest& f : forests_of_order(n)) {
      const IBPNormalForm nf = ibp_normalize(Series(f, 1));
      for (const auto& [t, c] : nf.trees.terms()) EXPECT_TRUE(t.is_exotic_tree()) << f.key() << " -> " << t.key();
      for (const auto& [t, c] : nf.residual.terms()) EXPECT_EQ(t.grading().num_roots, 0) << f.key() << " -> " << t.key();
      if (f.is_exotic_tree()) EXPECT_EQ(nf.trees, Series(f, 1));
    }
  const IBPNormalForm a = ibp_normalize(Series(parse("(b)"), 1));
  Series want;
  want.add(parse("b=b"), -2);
  EXPECT_EQ(a.trees, Series(parse("b"), -1));
  EXPECT_EQ(a.residual, want);
}

TEST(Ibp, GeneratorIsEquivalentToZero) {
  // int L phi rho = 0: l ~ 0 at order one.
  Series l = S({{"b", 1}});
  l.add(parse("1,1"), Rational(1, 2));
  IBPOptions opt;
  opt.reduce_trees = true;
  const IBPNormalForm nf = ibp_normalize(l, opt);
  EXPECT_TRUE(nf.trees.empty());
  EXPECT_TRUE(nf.clean());
}

TEST(Ibp, GradientGraphs) {
  const GradientGraph g = gradient_graph(parse("b[b]"));
  EXPECT_EQ(g.vertices, 3);
  EXPECT_EQ(g.edges.size(), 2u);
  // b[1,1] and 1,1 differ; b[b] and b[b] agree.
  EXPECT_NE(graph_key(gradient_graph(parse("b[1,1]"))), graph_key(gradient_graph(parse("b[b]"))));
  EXPECT_EQ(graph_key(gradient_graph(parse("b[b]"))), graph_key(gradient_graph(parse("b[b]"))));
}

TEST(IbpSuite, Relations) {
  const CheckResult r = check_ibp_relations();
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(IbpSuite, StepsPreserveIntegrals) {
  const CheckResult r = check_ibp_step_quadrature(3, 1024, 1e-10);
  EXPECT_TRUE(r.passed) << r.detail;
  const CheckResult n = check_ibp_normalize_quadrature(3, 1024, 1e-9);
  EXPECT_TRUE(n.passed) << n.detail;
}

TEST(IbpSuite, Confluence) {
  const CheckResult r = check_ibp_confluence(3, 2, 21);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Ibp, KernelElement) {
  IBPOptions opt;
  opt.reduce_trees = true;
  const IBPNormalForm nf = ibp_normalize(detail::kernel_element(true), opt);
  EXPECT_TRUE(nf.trees.empty());
  EXPECT_TRUE(nf.clean());
  detail::IntegralCache cache(parse_expr("sin(x) + 1/4*cos(2*x)"), parse_expr("cos(2*x)"), 1, 2048);
  const QuadratureResult given = cache.integrate(detail::kernel_element(false));
  EXPECT_GT(std::abs(given.relative()), 1e-2);
  const QuadratureResult fixed = cache.integrate(detail::kernel_element(true));
  EXPECT_LT(std::abs(fixed.relative()), 1e-8);
}
