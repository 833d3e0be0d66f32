#include "exotic/ibp.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <unordered_map>

#include "exotic/enumerate.hpp"

namespace exotic {

namespace {

std::size_t U(int i) { return static_cast<std::size_t>(i); }

RawForest without_vertex(const RawForest& raw, int x) {
  std::vector<int> map(raw.v.size(), -1);
  int k = 0;
  for (int i = 0; i < static_cast<int>(raw.v.size()); ++i)
    if (i != x) map[U(i)] = k++;
  RawForest out;
  for (int i = 0; i < static_cast<int>(raw.v.size()); ++i) {
    if (i == x) continue;
    Vertex v = raw.v[U(i)];
    if (v.parent == x) throw ForestError("removed vertex still has predecessors");
    if (v.parent >= 0) v.parent = map[U(v.parent)];
    out.add(v);
  }
  for (auto [a, b] : raw.stolons)
    if (a != x && b != x) out.stolons.emplace_back(map[U(a)], map[U(b)]);
  return out;
}

bool is_root(const Forest& pi, int v) { return pi.vertex(v).parent < 0 && pi.data().mate[U(v)] < 0; }

std::vector<char> subtree(const Forest& pi, int r) {
  std::vector<char> in(U(pi.size()), 0);
  std::vector<int> stack{r};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    in[U(v)] = 1;
    for (int c : pi.data().preds[U(v)]) stack.push_back(c);
  }
  return in;
}

int subtree_size(const Forest& pi, int r) {
  auto in = subtree(pi, r);
  return static_cast<int>(std::count(in.begin(), in.end(), 1));
}

// Canonical phase-1 choice.
int pick_root(const Forest& pi, std::mt19937_64* rng) {
  const auto& roots = pi.data().roots;
  if (roots.size() <= 1) return -1;
  if (rng) return roots[U(static_cast<int>((*rng)() % roots.size()))];
  for (int r : roots)
    if (pi.is_liana(r)) return r;
  int best = roots.front();
  for (int r : roots)
    if (subtree_size(pi, r) < subtree_size(pi, best)) best = r;
  return best;
}

// ---- gradient graphs ----

struct GraphSystem {
  std::unordered_map<std::string, int> column;
  std::vector<std::string> keys;
  std::vector<char> tree_column;
  std::vector<Forest> tree_rep;    // min-key exotic tree per tree column
  std::vector<Forest> any_rep;     // min-key forest per column
  std::map<int, std::map<int, Rational>> pivots;  // pivot column -> row, pivot coefficient 1

  void reduce(std::map<int, Rational>& v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto p = pivots.find(it->first);
      if (p == pivots.end()) {
        ++it;
        continue;
      }
      const Rational c = it->second;
      const int col = it->first;
      for (const auto& [k, w] : p->second) {
        Rational& slot = v[k];
        slot -= c * w;
      }
      for (auto e = v.begin(); e != v.end();) e = e->second == 0 ? v.erase(e) : std::next(e);
      it = v.upper_bound(col);
    }
  }

  void insert(std::map<int, Rational> row) {
    reduce(row);
    if (row.empty()) return;
    const int col = row.begin()->first;
    const Rational inv = Rational(1) / row.begin()->second;
    for (auto& [k, w] : row) w *= inv;
    pivots.emplace(col, std::move(row));
  }
};

int sign_of(const Forest& pi) { return pi.grading().num_black % 2 == 0 ? 1 : -1; }

int edge_degree(const GradientGraph& g, int u) {
  int d = 0;
  for (auto [a, b] : g.edges) d += (a == u) + (b == u);
  return d;
}

GraphSystem build_system(int order) {
  GraphSystem sys;
  std::map<std::string, GradientGraph> graphs;
  std::map<std::string, Forest> rep, tree;
  for (const Forest& f : forests_of_order(order)) {
    GradientGraph g = gradient_graph(f);
    std::string k = graph_key(g);
    graphs.emplace(k, g);
    rep.emplace(k, f);
    if (f.is_exotic_tree()) tree.emplace(k, f);
  }
  // Non-tree columns are eliminated first.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& [k, g] : graphs) {
      bool t = tree.count(k) > 0;
      if (t != (pass == 1)) continue;
      sys.column.emplace(k, static_cast<int>(sys.keys.size()));
      sys.keys.push_back(k);
      sys.tree_column.push_back(t ? 1 : 0);
      sys.any_rep.push_back(rep.at(k));
      sys.tree_rep.push_back(t ? tree.at(k) : rep.at(k));
    }
  }
  auto col = [&](const GradientGraph& g) {
    auto it = sys.column.find(graph_key(g));
    if (it == sys.column.end()) throw std::logic_error("gradient graph outside the enumerated order");
    return it->second;
  };
  for (const auto& [k, g] : graphs) {
    for (int u = 0; u < g.vertices; ++u) {
      if (u != 0 && edge_degree(g, u) < 2) continue;
      std::vector<int> seen_other;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [a, b] = g.edges[e];
        if (a != u && b != u) continue;
        int other = a == u ? b : a;
        if (std::find(seen_other.begin(), seen_other.end(), other) != seen_other.end()) continue;
        seen_other.push_back(other);
        auto moved = [&](int y, int n_vertices) {
          GradientGraph h = g;
          h.vertices = n_vertices;
          auto& ed = h.edges[e];
          if (ed.first == u) ed.first = y;
          else ed.second = y;
          return h;
        };
        std::map<int, Rational> row;
        row[col(g)] += 1;
        for (int y = 0; y < g.vertices; ++y)
          if (y != u) row[col(moved(y, g.vertices))] += 1;
        row[col(moved(g.vertices, g.vertices + 1))] -= 2;
        for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
        sys.insert(std::move(row));
      }
    }
  }
  return sys;
}

const GraphSystem& system_for(int order) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GraphSystem>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GraphSystem>(build_system(order));
  return *slot;
}

void project(int order, const std::vector<std::pair<Forest, Rational>>& terms, IBPNormalForm& out) {
  const GraphSystem& sys = system_for(order);
  std::map<int, Rational> v;
  for (const auto& [f, c] : terms) {
    int k = sys.column.at(graph_key(gradient_graph(f)));
    v[k] += c * sign_of(f);
  }
  for (auto it = v.begin(); it != v.end();) it = it->second == 0 ? v.erase(it) : std::next(it);
  sys.reduce(v);
  for (const auto& [k, c] : v) {
    const Forest& f = sys.tree_column[U(k)] ? sys.tree_rep[U(k)] : sys.any_rep[U(k)];
    (sys.tree_column[U(k)] ? out.trees : out.residual).add(f, c * sign_of(f));
  }
}

}  // namespace

Series ibp_step(const Forest& pi, int r) {
  const ForestData& d = pi.data();
  if (r < 0 || r >= pi.size() || !is_root(pi, r)) throw ForestError("not a root vertex: " + pi.key());
  if (pi.has_letters()) throw ForestError("integration by parts needs a gradient exotic forest");
  if (d.roots.size() == 1 && pi.is_black(r)) throw ForestError("nothing to eliminate: " + pi.key());
  const std::vector<char> in_t = subtree(pi, r);
  Series out;
  for (int v = 0; v < pi.size(); ++v) {
    if (!pi.is_node(v)) continue;
    if (in_t[U(v)] || pi.is_black(v)) {
      RawForest raw = pi.raw();
      raw.v[U(r)].parent = v;
      out.add(canonicalize(raw), -1);
    }
  }
  RawForest raw = pi.raw();
  if (pi.is_liana(r)) {
    Vertex& p = raw.v[U(d.partner[U(r)])];
    p = Vertex{Deco::black, 'b', 0, p.parent};
    raw = without_vertex(raw, r);
  } else {
    int w = raw.add_black();
    raw.stolons.emplace_back(r, w);
  }
  out.add(canonicalize(raw), -2);
  return out;
}

int ibp_default_root(const Forest& pi) { return pick_root(pi, nullptr); }

IBPNormalForm ibp_normalize(const Series& s, const IBPOptions& opt) {
  std::mt19937_64 rng(opt.seed.value_or(0));
  std::map<Forest, Rational> work = s.terms();
  std::map<int, std::vector<std::pair<Forest, Rational>>> leftovers;
  IBPNormalForm out;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const Forest& f = node.key();
    const Rational& c = node.mapped();
    if (f.order() == 0) {
      out.residual.add(f, c);
      continue;
    }
    int r = pick_root(f, opt.seed ? &rng : nullptr);
    if (r < 0) {
      if (f.is_exotic_tree() && !opt.reduce_trees) out.trees.add(f, c);
      else if (opt.project) leftovers[f.order()].emplace_back(f, c);
      else out.residual.add(f, c);
      continue;
    }
    const Series step = ibp_step(f, r);
    for (const auto& [g, w] : step.terms()) {
      Rational& slot = work[g];
      slot += c * w;
      if (slot == 0) work.erase(g);
    }
  }
  for (const auto& [order, terms] : leftovers) project(order, terms, out);
  return out;
}

IBPMap ibp_map(const Functional& x, int max_order) {
  Series s;
  for (const Forest& f : enumerate(max_order)) {
    if (f.order() == 0) continue;
    Rational v = x(f);
    if (v != 0) s.add(f, v / Rational(symmetry_sigma(f)));
  }
  IBPNormalForm nf = ibp_normalize(s);
  IBPMap out{Functional(max_order, false), nf.residual};
  for (const auto& [t, c] : nf.trees.terms()) out.value.set(t, c * Rational(symmetry_sigma(t)));
  return out;
}

GradientGraph gradient_graph(const Forest& pi) {
  const ForestData& d = pi.data();
  std::vector<int> vm(U(pi.size()), -1);
  GradientGraph g;
  for (int v = 0; v < pi.size(); ++v) {
    if (pi.vertex(v).deco == Deco::letter) throw ForestError("gradient graphs need exotic forests");
    if (pi.is_black(v)) vm[U(v)] = g.vertices++;
  }
  auto end_of = [&](int p) { return p < 0 ? 0 : vm[U(p)]; };
  for (int v = 0; v < pi.size(); ++v) {
    const int p = pi.vertex(v).parent;
    if (pi.is_black(v)) {
      if (p >= 0) g.edges.emplace_back(vm[U(v)], vm[U(p)]);
      else if (d.mate[U(v)] < 0) g.edges.emplace_back(vm[U(v)], 0);
      else if (v < d.mate[U(v)]) g.edges.emplace_back(vm[U(v)], vm[U(d.mate[U(v)])]);
    } else if (v < d.partner[U(v)]) {
      g.edges.emplace_back(end_of(p), end_of(pi.vertex(d.partner[U(v)]).parent));
    }
  }
  return g;
}

std::string graph_key(const GradientGraph& g) {
  const int n = g.vertices;
  // Vertex invariants split the relabelling search into classes.
  std::vector<std::array<int, 3>> inv(U(n), {0, 0, 0});
  for (auto [a, b] : g.edges) {
    ++inv[U(a)][0];
    ++inv[U(b)][0];
    if (a == b) ++inv[U(a)][1];
    if (a == 0) ++inv[U(b)][2];
    if (b == 0) ++inv[U(a)][2];
  }
  std::vector<int> order;
  for (int v = 1; v < n; ++v) order.push_back(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return inv[U(a)] < inv[U(b)]; });
  std::vector<std::pair<int, int>> ranges;  // [begin, end) in order
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && inv[U(order[j])] == inv[U(order[i])]) ++j;
    ranges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    i = j;
  }
  std::vector<std::pair<int, int>> best;
  bool have = false;
  std::vector<int> label(U(n), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t r) {
    if (r == ranges.size()) {
      for (std::size_t i = 0; i < order.size(); ++i) label[U(order[i])] = static_cast<int>(i) + 1;
      std::vector<std::pair<int, int>> e;
      for (auto [a, b] : g.edges) e.emplace_back(std::min(label[U(a)], label[U(b)]), std::max(label[U(a)], label[U(b)]));
      std::sort(e.begin(), e.end());
      if (!have || e < best) best = std::move(e), have = true;
      return;
    }
    auto first = order.begin() + ranges[r].first;
    auto last = order.begin() + ranges[r].second;
    std::sort(first, last);
    do rec(r + 1);
    while (std::next_permutation(first, last));
  };
  rec(0);
  std::string key = std::to_string(n) + ":";
  for (auto [a, b] : best) key += std::to_string(a) + "-" + std::to_string(b) + ",";
  return key;
}

}  // namespace exotic
