#include "exotic/enumerate.hpp"

#include <algorithm>
#include <mutex>
#include <string>
#include <unordered_set>

namespace exotic {

Filter parse_filter(std::string_view name) {
  if (name == "all") return Filter::all;
  if (name == "trees") return Filter::trees;
  if (name == "et" || name == "black-root-trees") return Filter::et;
  if (name == "eat") return Filter::eat;
  if (name == "aromas") return Filter::aromas;
  if (name == "connected") return Filter::connected;
  if (name == "no-aromas" || name == "ef") return Filter::no_aromas;
  throw std::invalid_argument("unknown filter: " + std::string(name));
}

bool matches(const Forest& f, Filter filter) {
  const Grading& g = f.grading();
  switch (filter) {
    case Filter::all: return true;
    case Filter::trees: return f.is_plain_tree();
    case Filter::et: return f.is_exotic_tree();
    case Filter::eat: return g.num_roots == 1;
    case Filter::aromas: return !f.empty() && g.num_roots == 0;
    case Filter::connected: return is_connected(f);
    case Filter::no_aromas: return g.num_aromas == 0;
  }
  return false;
}

namespace {

std::vector<Forest> next_level(const std::vector<Forest>& prev) {
  std::unordered_set<std::string> seen;
  std::vector<Forest> out;
  auto emit = [&](const RawForest& r) {
    Forest f = canonicalize(r);
    if (seen.insert(f.key()).second) out.push_back(f);
  };
  for (const Forest& f : prev) {
    const RawForest& base = f.raw();
    const int n = f.size();
    {
      RawForest r = base;
      r.add_black();
      emit(r);
    }
    {
      RawForest r = base;
      int a = r.add_black(), b = r.add_black();
      r.stolons.emplace_back(a, b);
      emit(r);
    }
    {
      RawForest r = base;
      int a = r.add_black();
      r.v[static_cast<std::size_t>(a)].parent = a;
      emit(r);
    }
    std::vector<int> nodes;
    for (int i = 0; i < n; ++i)
      if (f.is_node(i)) nodes.push_back(i);
    for (int v : nodes) {
      RawForest r = base;
      r.add_black(v);
      emit(r);
      if (f.data().on_cycle[static_cast<std::size_t>(v)]) {
        RawForest c = base;
        int old = c.v[static_cast<std::size_t>(v)].parent;
        int w = c.add_black(old);
        c.v[static_cast<std::size_t>(v)].parent = w;
        emit(c);
      }
    }
    std::vector<int> ends = nodes;
    ends.push_back(-1);
    const int label = base.max_label() + 1;
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i; j < ends.size(); ++j) {
        RawForest r = base;
        r.add_liana(label, ends[i]);
        r.add_liana(label, ends[j]);
        emit(r);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::mutex level_mu;
std::vector<std::vector<Forest>> levels{{Forest()}};

}  // namespace

const std::vector<Forest>& forests_of_order(int order) {
  std::lock_guard lock(level_mu);
  while (static_cast<int>(levels.size()) <= order) levels.push_back(next_level(levels.back()));
  return levels[static_cast<std::size_t>(order)];
}

std::vector<Forest> enumerate(int max_order, Filter filter, int bound) {
  if (max_order < 0) throw std::invalid_argument("negative order");
  if (max_order > bound)
    throw std::invalid_argument("order " + std::to_string(max_order) + " exceeds bound " +
                                std::to_string(bound));
  std::vector<Forest> out;
  for (int n = 0; n <= max_order; ++n)
    for (const Forest& f : forests_of_order(n))
      if (matches(f, filter)) out.push_back(f);
  return out;
}

}  // namespace exotic
