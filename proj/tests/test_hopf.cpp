#include <gtest/gtest.h>

#include "exotic/clumped.hpp"
#include "exotic/enumerate.hpp"
#include "exotic/hopf.hpp"
#include "exotic/verify.hpp"
#include "verify_internal.hpp"

using namespace exotic;

namespace {

Series S(std::initializer_list<std::pair<const char*, int>> terms) {
  Series s;
  for (const auto& [k, c] : terms) s.add(parse(k), c);
  return s;
}

void expect_pass(const CheckResult& r) { EXPECT_TRUE(r.passed) << r.name << ": " << r.detail; EXPECT_GT(r.cases, 0u); }

}  // namespace

TEST(Graft, Examples) {
  EXPECT_EQ(graft(parse("b"), parse("b")), S({{"b[b]", 1}}));
  EXPECT_EQ(graft(parse("(b),b[b]"), parse("(b,b),b")),
            S({{"(b),(b,b[b[b]]),b", 2}, {"(b),(b,b),b[b[b]]", 1}}));
  EXPECT_EQ(graft(parse("b[2,2]"), parse("b[b[1],1]")), S({{"b[b[2,2],b[1],1]", 1}, {"b[b[b[2,2],1],1]", 1}}));
  // Lianas are not attachment points.
  EXPECT_EQ(graft(parse("b"), parse("1,1")), Series());
}

TEST(Graft, DivergenceAndStolon) {
  EXPECT_EQ(divergence(parse("(b),b[b,b]")), S({{"(b[b[b,b]])", 1}, {"(b),(b[b,b])", 1}, {"(b),(b,b[b])", 2}}));
  EXPECT_EQ(divergence(parse("b")), S({{"(b)", 1}}));
  EXPECT_EQ(divergence(parse("b[b]")), S({{"(b[b])", 1}, {"(b,b)", 1}}));
  EXPECT_EQ(stolon_pair(parse("(b),b"), parse("b[b]")), parse("(b),b=b[b]"));
  EXPECT_EQ(stolon_pair(parse("b"), parse("b")), parse("b=b"));
  EXPECT_EQ(stolon_pair(parse("b[1,1]"), parse("b")), stolon_pair(parse("b"), parse("b[1,1]")));
}

TEST(GrossmanLarson, SmallProducts) {
  EXPECT_EQ(gl_product(Forest(), parse("b[1],1")), S({{"b[1],1", 1}}));
  EXPECT_EQ(gl_product(parse("b"), parse("b")), S({{"b[b]", 1}, {"b,b", 1}}));
  // Each root of the left factor moves independently.
  EXPECT_EQ(gl_product(parse("1,1"), parse("b")), S({{"b,1,1", 1}, {"b[1],1", 2}, {"b[1,1]", 1}}));
}

TEST(GrossmanLarson, Antipode) {
  EXPECT_EQ(antipode_gl(parse("(b)")), S({{"(b)", 1}}));
  EXPECT_EQ(antipode_gl(parse("(b,b[1,1])")), S({{"(b,b[1,1])", 1}}));
  EXPECT_EQ(antipode_gl(parse("b")), S({{"b", -1}}));
  EXPECT_EQ(antipode_gl(parse("b,b")), S({{"b,b", 1}, {"b[b]", 2}}));
  EXPECT_EQ(antipode_gl(parse("(b),b")), S({{"(b),b", -1}, {"(b[b])", -1}}));
  // Involutive on forests whose factors have at most one root.
  for (const Forest& f : detail::forests_upto(3)) {
    if (!detail::single_rooted_factors(f)) continue;
    EXPECT_EQ(antipode_gl(antipode_gl(f)), Series(f, 1)) << f.key();
  }
}

TEST(Deshuffle, PrimitivesAndAntipode) {
  const Forest t = parse("b[1],1");
  const ForestTensor d = deshuffle(t);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.coeff(t, Forest()), 1);
  EXPECT_EQ(d.coeff(Forest(), t), 1);
  EXPECT_EQ(antipode_deshuffle(parse("b,b[b],1,1")), S({{"b,b[b],1,1", -1}}));
  EXPECT_EQ(antipode_deshuffle(parse("b,b")), S({{"b,b", 1}}));
  // Aroma-linear variant keeps aromas on the left.
  const ForestTensor dl = deshuffle(parse("(b),b"), true);
  for (const auto& [lr, c] : dl.terms()) EXPECT_EQ(lr.second.grading().num_aromas, 0) << lr.second.key();
}

TEST(Bck, ReferenceExamples) {
  const ForestTensor a = bck_coproduct(parse("(b[1]),b[1,b]"));
  EXPECT_EQ(a.size(), 8u);
  for (const auto& [l, r] : std::initializer_list<std::pair<const char*, const char*>>{
           {"{}", "(b[1]),b[1,b]"}, {"1,1", "(b),b[b]"}, {"b", "(b[1]),b[1]"}, {"(b[1]),1", "b[b]"},
           {"1,1,b", "(b),b"}, {"(b[1]),1,b", "b"}, {"1,b[1,b]", "(b)"}, {"(b[1]),b[1,b]", "{}"}})
    EXPECT_EQ(a.coeff(parse(l), parse(r)), 1) << l << " (x) " << r;
  const ForestTensor b = bck_coproduct(parse("b[1,1,2,b[2]]"));
  EXPECT_EQ(b.size(), 7u);
  for (const auto& [l, r] : std::initializer_list<std::pair<const char*, const char*>>{
           {"{}", "b[1,1,2,b[2]]"}, {"1,1", "b[2,b[2]]"}, {"2,2", "b[1,1,b]"}, {"1,1,2,2", "b[b]"},
           {"2,b[2]", "b[1,1]"}, {"1,1,2,b[2]", "b"}, {"b[1,1,2,b[2]]", "{}"}})
    EXPECT_EQ(b.coeff(parse(l), parse(r)), 1) << l << " (x) " << r;
  EXPECT_EQ(bck_coproduct(Forest()).coeff(Forest(), Forest()), 1);
}

TEST(Cem, SecondExampleAndSmallCases) {
  const ClumpedTensor t = cem_coaction(parse("b[1,1,2,b[2]]"));
  EXPECT_EQ(t.size(), 6u);
  EXPECT_EQ(t.coeff(parse_clumped("b[1,1,2,b[2]]"), parse("b")), 1);
  EXPECT_EQ(t.coeff(parse_clumped("b[b]"), parse("b[1,1,2,2]")), 1);
  EXPECT_EQ(t.coeff(parse_clumped("b[1,1,b]"), parse("b[2,2]")), 1);
  EXPECT_EQ(t.coeff(parse_clumped("b[2,b[2]]"), parse("b[1,1]")), 1);
  EXPECT_EQ(t.coeff(parse_clumped("b[1,1] . b"), parse("b[2,b[2]]")), 1);
  EXPECT_EQ(t.coeff(parse_clumped("b . b"), parse("b[1,1,2,b[2]]")), 1);
  EXPECT_EQ(cem_coaction(parse("b")).coeff(parse_clumped("b"), parse("b")), 1);
  EXPECT_EQ(cem_coaction(parse("b")).size(), 1u);
  const ClumpedTensor a = cem_coaction(parse("(b),b[1],1"));
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.coeff(parse_clumped("b . b"), parse("(b),b[1],1")), 1);
  EXPECT_EQ(a.coeff(parse_clumped("(b),b"), parse("b[1],1")), 1);
  // No black vertex: only the empty clumping.
  EXPECT_EQ(cem_coaction(parse("1,1")).coeff(ClumpedForest(), parse("1,1")), 1);
}

TEST(Cem, FirstExampleHasTheExtraCovering) {
  // The eight displayed terms are all present; the covering by b and (b),b
  // contracting to b[1,b[1]] comes on top.
  const ClumpedTensor t = cem_coaction(parse("(b[1]),b[1,b]"));
  for (const auto& [l, r] : std::initializer_list<std::pair<const char*, const char*>>{
           {"(b[1]),b[1,b]", "b"}, {"(b[1]),1 . b[b]", "b[b]"}, {"(b),b[b]", "b[1,1]"},
           {"b . b[b]", "(b[1]),b[1]"}, {"(b[1]),b[1] . b", "b[b]"}, {"(b[1]),1 . b . b", "b[b,b]"},
           {"(b),b . b", "b[1,1,b]"}, {"b . b . b", "(b[1]),b[1,b]"}})
    EXPECT_EQ(t.coeff(parse_clumped(l), parse(r)), 1) << l << " (x) " << r;
  EXPECT_EQ(t.coeff(parse_clumped("(b),b . b"), parse("b[1,b[1]]")), 1);
  EXPECT_EQ(t.size(), 9u);
}

TEST(Cem, Decorated) {
  const ClumpedTensor b = cem_coaction_decorated(parse("b"), "bw");
  EXPECT_EQ(b.size(), 2u);
  EXPECT_EQ(b.coeff(parse_clumped("b@w"), parse("w")), 1);
  const ClumpedTensor bw = cem_coaction_decorated(parse("b[w]"), "bw");
  EXPECT_EQ(bw.size(), 6u);
  EXPECT_EQ(bw.coeff(parse_clumped("b@w . w@b"), parse("w[b]")), 1);
  EXPECT_EQ(cem_coaction_decorated(parse("b[b,w]"), "bw").size(), 18u);
}

TEST(Clumped, PhiAndAdjoint) {
  EXPECT_EQ(phi(parse_clumped("(b),b . b[b]")), parse("(b),b,b[b]"));
  const auto star = phi_star(parse("(b),b=b,b,b[b]"));
  EXPECT_EQ(star.size(), 4u);
  for (const char* p : {"(b),b=b,b . b[b]", "b=b,b . (b),b[b]", "(b),b . b=b,b[b]", "b . (b),b=b,b[b]"})
    EXPECT_EQ(star.at(parse_clumped(p)), 1) << p;
  const auto tree = phi_star(parse("b[b]"));
  EXPECT_EQ(tree.size(), 1u);
  EXPECT_EQ(tree.begin()->first, parse_clumped("b[b]"));
}

TEST(Clumped, ClumpedValues) {
  const Functional a = character_extend({{parse("b"), 2}, {parse("(b)"), 3}}, 4);
  // n = 2 rooted clumps and m = 1 aroma: weight 1/2.
  EXPECT_EQ(to_clumped(a, parse_clumped("(b),b . b")), a(parse("(b),b,b")) / 2);
  EXPECT_EQ(a(parse("(b),b,b")), 12);
  EXPECT_EQ(to_clumped(a, parse_clumped("b . b")), a(parse("b,b")));
}

TEST(SubstitutionAction, Examples) {
  EXPECT_EQ(substitute_action(parse_clumped("b[b]@w . w@b . w@b"), parse("w[b,b]")),
            S({{"b[w,w,b]", 2}, {"b[w,b[w]]", 4}, {"b[b[w,w]]", 2}}));
  EXPECT_EQ(substitute_action(parse_clumped("b"), parse("b")), S({{"b", 1}}));
  EXPECT_EQ(substitute_action(parse_clumped("b . b"), parse("b")), Series());
}

// Exhaustive identities at a reduced order; the full runs are the verify
// suites registered with ctest.
TEST(HopfIdentities, PreLieAndGuinOudom) {
  expect_pass(check_pre_lie(2));
  expect_pass(check_leibniz(2));
  expect_pass(check_guin_oudom(2));
}

TEST(HopfIdentities, GrossmanLarson) {
  expect_pass(check_gl_associativity(2));
  expect_pass(check_gl_action(2));
  expect_pass(check_gl_bialgebra(2));
  expect_pass(check_antipode(2));
  expect_pass(check_hopf_brace(2));
  expect_pass(check_action_antipode(2));
}

TEST(HopfIdentities, CoproductsAndDuality) {
  expect_pass(check_bck_coassociativity(3));
  expect_pass(check_duality(2));
  expect_pass(check_cointeraction(3, 17));
}
