#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "exotic/enumerate.hpp"
#include "exotic/forest.hpp"
#include "verify_internal.hpp"

using namespace exotic;

namespace {

// Same forest with its vertices listed in a random order.
RawForest shuffled(const Forest& f, std::mt19937_64& rng) {
  const RawForest& raw = f.raw();
  const int n = static_cast<int>(raw.v.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  RawForest out;
  out.v.resize(raw.v.size());
  for (int i = 0; i < n; ++i) {
    Vertex x = raw.v[static_cast<std::size_t>(i)];
    if (x.parent >= 0) x.parent = perm[static_cast<std::size_t>(x.parent)];
    out.v[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = x;
  }
  // Relabel lianas as well.
  const int k = raw.max_label();
  std::vector<int> labels(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) labels[static_cast<std::size_t>(i)] = i;
  std::shuffle(labels.begin() + 1, labels.end(), rng);
  for (auto& x : out.v)
    if (x.deco == Deco::liana) x.label = labels[static_cast<std::size_t>(x.label)];
  for (auto [a, b] : raw.stolons) out.stolons.emplace_back(perm[static_cast<std::size_t>(b)], perm[static_cast<std::size_t>(a)]);
  return out;
}

}  // namespace

TEST(Forest, ParseAndRender) {
  EXPECT_EQ(parse("{}").size(), 0);
  EXPECT_TRUE(parse("{}").empty());
  const Forest f = parse("b[b,1],1");
  EXPECT_EQ(f.order(), 3);
  EXPECT_EQ(f.grading().num_roots, 2);
  EXPECT_EQ(f.grading().num_lianas, 1);
  EXPECT_EQ(parse(f.key()), f);
  EXPECT_EQ(render(f), f.key());
}

TEST(Forest, CanonicalIdentityOfTheTwoRenderings) {
  EXPECT_EQ(parse("(b[b[3],1,1]),b[b[2],b[2,3]]"), parse("(b[b[2],3,3]),b[b[1],b[1,2]]"));
  EXPECT_NE(parse("(b[b[3],1,1]),b[b[2],b[2,3]]"), parse("(b[b[3],1,1]),b[b[2,3],b[2]],b"));
}

TEST(Forest, LianaRelabeling) {
  EXPECT_EQ(parse("b[1,1,2,2]"), parse("b[2,2,1,1]"));
  EXPECT_EQ(parse("b[1,2,b[1,2]]"), parse("b[2,1,b[2,1]]"));
  EXPECT_NE(parse("b[1,1,b[2,2]]"), parse("b[1,2,b[1,2]]"));
}

TEST(Forest, AromaRotations) {
  EXPECT_EQ(parse("(b,b[b])"), parse("(b[b],b)"));
  EXPECT_EQ(parse("(b,b[1],b[b]),1"), parse("(b[1],b[b],b),1"));
  EXPECT_EQ(parse("(b,b[1],b[b]),1"), parse("(b[b],b,b[1]),1"));
  // Reversing a cycle changes the orientation of its edges.
  EXPECT_NE(parse("(b[1],b,b[b]),1"), parse("(b[1],b[b],b),1"));
}

TEST(Forest, Orders) {
  EXPECT_EQ(parse("b=b,b").order(), 2);
  EXPECT_EQ(parse("b=b").order(), 1);
  EXPECT_EQ(parse("{}").order(), 0);
  EXPECT_EQ(parse("b[1,1,2,b[2]]").order(), 4);
  EXPECT_EQ(parse("b[1,1,2,b[2]]").grading().num_roots, 1);
  EXPECT_EQ(parse("(b[1]),b=b[2],b[1],2").order(), 5);
}

TEST(Forest, RejectsMalformedInput) {
  EXPECT_THROW(parse("b[1]"), ForestError);
  EXPECT_THROW(parse("1,1,1"), ForestError);
  EXPECT_THROW(parse("b[b"), ForestError);
  EXPECT_THROW(parse("b]"), ForestError);
  EXPECT_THROW(parse("(1,1)"), ForestError);
}

TEST(Forest, SymmetryValues) {
  EXPECT_EQ(symmetry_sigma(parse("b[b,b]")), 2u);
  EXPECT_EQ(symmetry_sigma(parse("1,1")), 2u);
  EXPECT_EQ(symmetry_sigma(parse("b[1,1]")), 2u);
  EXPECT_EQ(symmetry_sigma(parse("1,1,2,2")), 8u);
  EXPECT_EQ(symmetry_sigma(parse("{}")), 1u);
  EXPECT_EQ(symmetry_sigma(parse("(b),(b)")), 2u);
}

TEST(Forest, SymmetryMatchesBruteForce) {
  for (const Forest& f : detail::forests_upto(4))
    ASSERT_EQ(symmetry_sigma(f), detail::brute_sigma(f)) << f.key();
}

TEST(Forest, KeyInvariantUnderVertexOrder) {
  std::mt19937_64 rng(7);
  for (const Forest& f : detail::forests_upto(4))
    for (int k = 0; k < 3; ++k) ASSERT_EQ(canonicalize(shuffled(f, rng)).key(), f.key());
}

TEST(Forest, FactorsAndConcatenation) {
  const Forest f = parse("(b),b=b[1],1,b[b]");
  const auto parts = factors(f);
  EXPECT_EQ(parts.size(), 3u);
  EXPECT_EQ(concat(parts), f);
  EXPECT_TRUE(is_connected(parse("b[1],1")));
  EXPECT_FALSE(is_connected(parse("b,1,1")));
}

TEST(Enumerate, CountsPerOrder) {
  // The stolon-free part is rebuilt independently in EnumerationIsComplete.
  const std::size_t expected[] = {1, 4, 21, 116, 684};
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(forests_of_order(n).size(), expected[n]) << n;
}

TEST(Enumerate, ReferenceListings) {
  EXPECT_EQ(enumerate(4, Filter::trees).size(), 8u);
  const auto eat = enumerate(2, Filter::eat);
  std::set<std::string> keys;
  for (const Forest& f : eat) keys.insert(f.key());
  std::set<std::string> want;
  for (const char* k : {"b", "b[b]", "b[1,1]", "(b),b", "(b[1]),1", "b=b,b", "b=b[1],1"}) want.insert(parse(k).key());
  EXPECT_EQ(keys, want);
  EXPECT_EQ(enumerate(0).size(), 1u);
}

TEST(Enumerate, EnumerationIsComplete) {
  // Every stolon-free forest of order n + 1 reduces to one of order n by
  // removing a black leaf, a liana pair, a vertex of a bare cycle, or a bare
  // self-loop. Grow order-n forests by the inverse moves and compare.
  for (int n = 0; n <= 3; ++n) {
    std::set<std::string> grown;
    for (const Forest& f : forests_of_order(n)) {
      if (f.grading().num_stolons != 0) continue;
      const RawForest& raw = f.raw();
      std::vector<int> nodes{-1};
      for (int v = 0; v < f.size(); ++v)
        if (f.is_node(v)) nodes.push_back(v);
      for (int p : nodes) {
        RawForest r = raw;
        r.add_black(p);
        grown.insert(canonicalize(r).key());
        for (int q : nodes) {
          RawForest s = raw;
          const int label = s.max_label() + 1;
          s.add_liana(label, p);
          s.add_liana(label, q);
          grown.insert(canonicalize(s).key());
        }
      }
      for (int v = 0; v < f.size(); ++v) {
        if (!f.data().on_cycle[static_cast<std::size_t>(v)]) continue;
        RawForest c = raw;
        const int w = c.add_black(c.v[static_cast<std::size_t>(v)].parent);
        c.v[static_cast<std::size_t>(v)].parent = w;
        grown.insert(canonicalize(c).key());
      }
      RawForest a = raw;
      const int v = a.add_black();
      a.v[static_cast<std::size_t>(v)].parent = v;
      grown.insert(canonicalize(a).key());
    }
    std::set<std::string> all;
    for (const Forest& f : forests_of_order(n + 1))
      if (f.grading().num_stolons == 0) all.insert(f.key());
    EXPECT_EQ(grown, all) << "order " << n + 1;
  }
}
