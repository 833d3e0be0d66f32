#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "exotic/forest.hpp"
#include "exotic/rational.hpp"
#include "exotic/series.hpp"

namespace exotic {

// Monomial of clumps. A clump is a connected rooted factor together with the
// aromas attached to it; a clump without roots holds aromas only. An optional
// tag per clump records the decoration it substitutes (decorated coaction).
class ClumpedForest {
 public:
  ClumpedForest() = default;
  explicit ClumpedForest(std::vector<Forest> comps, std::string tags = {});

  const std::vector<Forest>& components() const { return comps_; }
  // Empty when untagged, otherwise one tag per component.
  const std::string& tags() const { return tags_; }
  const std::string& key() const { return key_; }
  int order() const { return order_; }
  bool empty() const { return comps_.empty(); }

  friend bool operator==(const ClumpedForest& a, const ClumpedForest& b) { return a.key_ == b.key_; }
  friend bool operator<(const ClumpedForest& a, const ClumpedForest& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_;
    return a.key_ < b.key_;
  }

 private:
  std::vector<Forest> comps_;
  std::string tags_;
  std::string key_ = "{}";
  int order_ = 0;
};

// "c1 . c2 . c3", tagged components written "c@w".
ClumpedForest parse_clumped(std::string_view text);
ClumpedForest clump_product(const ClumpedForest& a, const ClumpedForest& b);

// Symmetry of a clumped forest: product of component symmetries times the
// factorials of repeated components.
std::uint64_t clumped_sigma(const ClumpedForest& p);

// Number of rooted clumps and number of aroma factors.
int clumped_rooted_count(const ClumpedForest& p);
int clumped_aroma_count(const ClumpedForest& p);

// Forgets the clumping.
Forest phi(const ClumpedForest& p);

// Adjoint of phi for the sigma pairing: sum over all attachments of the
// aroma factors to the rooted factors.
std::map<ClumpedForest, Rational> phi_star(const Forest& f);

// a_C(p) = a(phi(p)) / n^m with n rooted clumps and m aromas.
Rational to_clumped(const Functional& a, const ClumpedForest& p);

// Character of clumped forests extending b0 from single clumps.
Rational clumped_character(const Functional& b0, const ClumpedForest& p);

// Rooted factors and aroma factors of a forest.
struct FactorSplit {
  std::vector<Forest> rooted;
  std::vector<Forest> aromas;
};
FactorSplit split_factors(const Forest& f);

}  // namespace exotic
