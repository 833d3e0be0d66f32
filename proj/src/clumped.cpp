#include "exotic/clumped.hpp"

#include <algorithm>
#include <numeric>

namespace exotic {

ClumpedForest::ClumpedForest(std::vector<Forest> comps, std::string tags) {
  if (!tags.empty() && tags.size() != comps.size())
    throw ForestError("clumped forest: one tag per component expected");
  std::vector<std::size_t> idx(comps.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto piece = [&](std::size_t i) {
    return tags.empty() ? comps[i].key() : comps[i].key() + "@" + tags[i];
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (comps[a].order() != comps[b].order()) return comps[a].order() < comps[b].order();
    return piece(a) < piece(b);
  });
  for (std::size_t i : idx) {
    if (comps[i].empty()) continue;
    comps_.push_back(comps[i]);
    if (!tags.empty()) tags_.push_back(tags[i]);
    order_ += comps[i].order();
  }
  if (!comps_.empty()) {
    key_.clear();
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (i) key_ += " . ";
      key_ += comps_[i].key();
      if (!tags_.empty()) {
        key_ += "@";
        key_ += tags_[i];
      }
    }
  }
}

ClumpedForest parse_clumped(std::string_view text) {
  std::vector<Forest> comps;
  std::string tags;
  bool tagged = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(" . ", pos);
    std::string_view piece = text.substr(pos, next == std::string_view::npos ? text.npos : next - pos);
    char tag = 0;
    if (auto at = piece.find('@'); at != std::string_view::npos) {
      if (at + 2 != piece.size()) throw ForestError("bad clump tag in: " + std::string(piece));
      tag = piece[at + 1];
      piece = piece.substr(0, at);
      tagged = true;
    }
    comps.push_back(parse(piece));
    tags.push_back(tag);
    if (next == std::string_view::npos) break;
    pos = next + 3;
  }
  if (tagged && tags.find('\0') != std::string::npos)
    throw ForestError("clumped forest: tag either all components or none");
  if (comps.size() == 1 && comps[0].empty()) return ClumpedForest();
  return ClumpedForest(std::move(comps), tagged ? tags : std::string());
}

ClumpedForest clump_product(const ClumpedForest& a, const ClumpedForest& b) {
  std::vector<Forest> comps = a.components();
  comps.insert(comps.end(), b.components().begin(), b.components().end());
  if (a.tags().empty() != b.tags().empty() && !a.empty() && !b.empty())
    throw ForestError("clump product of tagged and untagged forests");
  std::string tags = a.tags() + b.tags();
  return ClumpedForest(std::move(comps), tags);
}

std::uint64_t clumped_sigma(const ClumpedForest& p) {
  std::uint64_t s = 1;
  const auto& c = p.components();
  std::size_t run = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    s *= symmetry_sigma(c[i]);
    bool same = i > 0 && c[i] == c[i - 1] && (p.tags().empty() || p.tags()[i] == p.tags()[i - 1]);
    run = same ? run + 1 : 1;
    s *= run;
  }
  return s;
}

FactorSplit split_factors(const Forest& f) {
  FactorSplit out;
  for (const Forest& g : factors(f)) {
    if (g.grading().num_roots > 0)
      out.rooted.push_back(g);
    else
      out.aromas.push_back(g);
  }
  return out;
}

int clumped_rooted_count(const ClumpedForest& p) {
  int n = 0;
  for (const Forest& c : p.components()) n += static_cast<int>(split_factors(c).rooted.size());
  return n;
}

int clumped_aroma_count(const ClumpedForest& p) {
  int m = 0;
  for (const Forest& c : p.components()) m += static_cast<int>(split_factors(c).aromas.size());
  return m;
}

Forest phi(const ClumpedForest& p) { return concat(p.components()); }

std::map<ClumpedForest, Rational> phi_star(const Forest& f) {
  std::map<ClumpedForest, Rational> out;
  FactorSplit s = split_factors(f);
  const std::size_t n = s.rooted.size();
  const std::size_t m = s.aromas.size();
  if (n == 0) {
    out[ClumpedForest(f.empty() ? std::vector<Forest>{} : std::vector<Forest>{f})] = 1;
    return out;
  }
  std::vector<std::size_t> assign(m, 0);
  while (true) {
    std::vector<std::vector<Forest>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[i].push_back(s.rooted[i]);
    for (std::size_t j = 0; j < m; ++j) groups[assign[j]].push_back(s.aromas[j]);
    std::vector<Forest> comps;
    for (auto& g : groups) comps.push_back(concat(g));
    ClumpedForest p(std::move(comps));
    out[p] += 1;
    std::size_t j = 0;
    while (j < m && ++assign[j] == n) assign[j++] = 0;
    if (j == m) break;
  }
  return out;
}

Rational to_clumped(const Functional& a, const ClumpedForest& p) {
  int n = clumped_rooted_count(p);
  int m = clumped_aroma_count(p);
  Rational v = a(phi(p));
  if (n > 0 && m > 0) v /= rational_pow(Rational(n), m);
  return v;
}

Rational clumped_character(const Functional& b0, const ClumpedForest& p) {
  Rational r = 1;
  for (const Forest& c : p.components()) {
    r *= b0(c);
    if (r == 0) break;
  }
  return r;
}

}  // namespace exotic
