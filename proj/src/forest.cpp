#include "exotic/forest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

namespace exotic {

int RawForest::max_label() const {
  int m = 0;
  for (const auto& x : v) m = std::max(m, x.label);
  return m;
}

std::vector<int> RawForest::append(const RawForest& other) {
  const int offset = static_cast<int>(v.size());
  const int shift = max_label();
  std::vector<int> map(other.v.size());
  for (std::size_t i = 0; i < other.v.size(); ++i) {
    Vertex x = other.v[i];
    if (x.parent >= 0) x.parent += offset;
    if (x.deco == Deco::liana) x.label += shift;
    map[i] = add(x);
  }
  for (auto [a, b] : other.stolons) stolons.emplace_back(a + offset, b + offset);
  return map;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RawForest run() {
    skip();
    if (s_.substr(pos_, 2) == "{}") {
      pos_ += 2;
      skip();
      if (pos_ != s_.size()) fail("trailing input");
      return out_;
    }
    component();
    skip();
    while (peek() == ',') {
      ++pos_;
      component();
      skip();
    }
    if (pos_ != s_.size()) fail("unexpected character");
    return out_;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ForestError("parse error at position " + std::to_string(pos_) + ": " + what + " in \"" +
                      std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  int integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected liana label");
    int label = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (label <= 0) fail("liana labels are positive");
    return label;
  }

  void component() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      std::vector<int> cycle{tree(-1)};
      while (peek() == ',') {
        ++pos_;
        cycle.push_back(tree(-1));
      }
      expect(')');
      for (std::size_t i = 0; i < cycle.size(); ++i)
        out_.v[static_cast<std::size_t>(cycle[i])].parent = cycle[(i + 1) % cycle.size()];
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      out_.add_liana(integer());
    } else {
      int a = tree(-1);
      if (peek() == '=') {
        ++pos_;
        int b = tree(-1);
        out_.stolons.emplace_back(a, b);
      }
    }
  }

  int tree(int parent) {
    char c = peek();
    if (!std::islower(static_cast<unsigned char>(c))) fail("expected vertex");
    ++pos_;
    int id = out_.add_letter(c, parent);
    if (peek() == '[') {
      ++pos_;
      child(id);
      while (peek() == ',') {
        ++pos_;
        child(id);
      }
      expect(']');
    }
    return id;
  }

  void child(int parent) {
    if (std::isdigit(static_cast<unsigned char>(peek())))
      out_.add_liana(integer(), parent);
    else
      tree(parent);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  RawForest out_;
};

struct Structure {
  std::vector<std::vector<int>> preds;
  std::vector<char> on_cycle;
  std::vector<int> mate;
  std::vector<std::vector<int>> cycles;  // each listed along successors
};

Structure analyse(const RawForest& f) {
  const int n = static_cast<int>(f.v.size());
  Structure s;
  s.preds.assign(static_cast<std::size_t>(n), {});
  s.on_cycle.assign(static_cast<std::size_t>(n), 0);
  s.mate.assign(static_cast<std::size_t>(n), -1);
  std::map<int, int> label_count;
  for (int i = 0; i < n; ++i) {
    const Vertex& x = f.v[static_cast<std::size_t>(i)];
    if (x.parent < -1 || x.parent >= n) throw ForestError("vertex successor out of range");
    if (x.parent >= 0) {
      if (f.v[static_cast<std::size_t>(x.parent)].deco == Deco::liana)
        throw ForestError("liana vertex cannot have predecessors");
      s.preds[static_cast<std::size_t>(x.parent)].push_back(i);
    }
    if (x.deco == Deco::liana) {
      if (x.label <= 0) throw ForestError("liana label must be positive");
      ++label_count[x.label];
    }
  }
  for (auto [label, count] : label_count)
    if (count != 2)
      throw ForestError("liana label " + std::to_string(label) + " occurs " + std::to_string(count) +
                        " times");
  for (auto [a, b] : f.stolons) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw ForestError("invalid stolon");
    for (int e : {a, b}) {
      const Vertex& x = f.v[static_cast<std::size_t>(e)];
      if (x.parent != -1) throw ForestError("stolon endpoint has a successor");
      if (x.deco == Deco::liana) throw ForestError("stolon endpoint cannot be a liana vertex");
      if (s.mate[static_cast<std::size_t>(e)] != -1) throw ForestError("vertex in two stolons");
    }
    s.mate[static_cast<std::size_t>(a)] = b;
    s.mate[static_cast<std::size_t>(b)] = a;
  }
  // cycle detection in the successor map
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (state[static_cast<std::size_t>(i)]) continue;
    std::vector<int> path;
    int v = i;
    while (v >= 0 && state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      v = f.v[static_cast<std::size_t>(v)].parent;
    }
    if (v >= 0 && state[static_cast<std::size_t>(v)] == 1) {
      std::vector<int> cyc;
      int u = v;
      do {
        s.on_cycle[static_cast<std::size_t>(u)] = 1;
        cyc.push_back(u);
        u = f.v[static_cast<std::size_t>(u)].parent;
      } while (u != v);
      s.cycles.push_back(std::move(cyc));
    }
    for (int p : path) state[static_cast<std::size_t>(p)] = 2;
  }
  return s;
}

class Renderer {
 public:
  Renderer(const RawForest& f, const Structure& s, const std::vector<int>& label_map)
      : f_(f), s_(s), labels_(label_map) {}

  std::string tree(int v) const {
    const Vertex& x = f_.v[static_cast<std::size_t>(v)];
    if (x.deco == Deco::liana) return std::to_string(labels_[static_cast<std::size_t>(x.label)]);
    std::string out(1, x.letter);
    std::vector<std::string> kids;
    for (int p : s_.preds[static_cast<std::size_t>(v)])
      if (!s_.on_cycle[static_cast<std::size_t>(p)]) kids.push_back(tree(p));
    if (!kids.empty()) {
      std::sort(kids.begin(), kids.end());
      out += '[';
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ',';
        out += kids[i];
      }
      out += ']';
    }
    return out;
  }

  std::string forest() const {
    std::vector<std::pair<int, std::string>> comps;
    for (const auto& cyc : s_.cycles) {
      std::vector<std::string> parts;
      for (int v : cyc) parts.push_back(tree(v));
      std::string best;
      for (std::size_t r = 0; r < parts.size(); ++r) {
        std::string cand = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i) cand += ',';
          cand += parts[(r + i) % parts.size()];
        }
        cand += ')';
        if (r == 0 || cand < best) best = cand;
      }
      comps.emplace_back(0, best);
    }
    for (auto [a, b] : f_.stolons) {
      std::string x = tree(a), y = tree(b);
      if (y < x) std::swap(x, y);
      comps.emplace_back(1, x + "=" + y);
    }
    for (std::size_t i = 0; i < f_.v.size(); ++i) {
      const Vertex& x = f_.v[i];
      if (x.parent == -1 && s_.mate[i] == -1)
        comps.emplace_back(x.deco == Deco::liana ? 3 : 2, tree(static_cast<int>(i)));
    }
    if (comps.empty()) return "{}";
    std::sort(comps.begin(), comps.end());
    std::string out;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i) out += ',';
      out += comps[i].second;
    }
    return out;
  }

 private:
  const RawForest& f_;
  const Structure& s_;
  const std::vector<int>& labels_;
};

std::shared_ptr<const ForestData> build_data(std::string key) {
  auto d = std::make_shared<ForestData>();
  d->raw = Parser(key).run();
  Structure s = analyse(d->raw);
  const auto n = d->raw.v.size();
  d->key = std::move(key);
  d->preds = std::move(s.preds);
  d->on_cycle = std::move(s.on_cycle);
  d->mate = std::move(s.mate);
  d->partner.assign(n, -1);
  std::map<int, int> first;
  Grading& g = d->grading;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& x = d->raw.v[i];
    if (x.deco == Deco::liana) {
      auto it = first.find(x.label);
      if (it == first.end()) {
        first[x.label] = static_cast<int>(i);
      } else {
        d->partner[i] = it->second;
        d->partner[static_cast<std::size_t>(it->second)] = static_cast<int>(i);
        ++g.num_lianas;
      }
    } else if (x.deco == Deco::black) {
      ++g.num_black;
    } else {
      ++g.num_letters;
    }
    if (x.parent == -1 && d->mate[i] == -1) {
      ++g.num_roots;
      d->roots.push_back(static_cast<int>(i));
    }
    if (x.parent >= 0 && x.deco != Deco::liana) ++g.num_edges;
  }
  g.num_stolons = static_cast<int>(d->raw.stolons.size());
  g.num_aromas = g.num_stolons + static_cast<int>(s.cycles.size());
  g.order = g.num_black + g.num_letters + g.num_lianas - g.num_stolons;
  return d;
}

class InternTable {
 public:
  std::shared_ptr<const ForestData> get(const std::string& key) {
    {
      std::shared_lock lock(mu_);
      auto it = table_.find(key);
      if (it != table_.end()) return it->second;
    }
    auto d = build_data(key);
    std::unique_lock lock(mu_);
    auto [it, inserted] = table_.emplace(key, d);
    return it->second;
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const ForestData>> table_;
};

InternTable& interned() {
  static InternTable table;
  return table;
}

}  // namespace

Forest::Forest() : d_(interned().get("{}")) {}

bool Forest::is_exotic_tree() const {
  const Grading& g = grading();
  return g.num_roots == 1 && g.num_aromas == 0 && !is_liana(data().roots.front());
}

bool Forest::is_plain_tree() const {
  const Grading& g = grading();
  return is_exotic_tree() && g.num_lianas == 0 && g.num_letters == 0;
}

RawForest parse_raw(std::string_view text) { return Parser(text).run(); }

Forest canonicalize(const RawForest& raw) {
  Structure s = analyse(raw);
  std::vector<int> distinct;
  for (const auto& x : raw.v)
    if (x.deco == Deco::liana) distinct.push_back(x.label);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const int top = distinct.empty() ? 0 : distinct.back();
  std::vector<int> label_map(static_cast<std::size_t>(top) + 1, 0);
  std::vector<int> perm(distinct.size());
  std::iota(perm.begin(), perm.end(), 1);
  std::string best;
  bool first = true;
  do {
    for (std::size_t i = 0; i < distinct.size(); ++i)
      label_map[static_cast<std::size_t>(distinct[i])] = perm[i];
    std::string cand = Renderer(raw, s, label_map).forest();
    if (first || cand < best) {
      best = std::move(cand);
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Forest(interned().get(best));
}

Forest parse(std::string_view text) { return canonicalize(parse_raw(text)); }

const std::string& render(const Forest& f) { return f.key(); }

Grading grading(const Forest& f) { return f.grading(); }

namespace {

class AutomorphismCounter {
 public:
  explicit AutomorphismCounter(const ForestData& d) : d_(d), n_(static_cast<int>(d.raw.v.size())) {
    colour_.resize(static_cast<std::size_t>(n_));
    std::vector<std::string> shape(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) shape[static_cast<std::size_t>(i)] = subtree(i);
    for (int i = 0; i < n_; ++i) {
      std::string c = shape[static_cast<std::size_t>(i)];
      c += d.on_cycle[static_cast<std::size_t>(i)] ? "|c" : "|-";
      c += d.mate[static_cast<std::size_t>(i)] >= 0 ? "|s" : "|-";
      int p = d.raw.v[static_cast<std::size_t>(i)].parent;
      c += p >= 0 ? "|" + shape[static_cast<std::size_t>(p)] : "|r";
      colour_[static_cast<std::size_t>(i)] = std::move(c);
    }
    img_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), 0);
  }

  std::uint64_t count() {
    total_ = 0;
    search(0);
    return total_;
  }

 private:
  std::string subtree(int v) const {
    const Vertex& x = d_.raw.v[static_cast<std::size_t>(v)];
    if (x.deco == Deco::liana) return "#";
    std::string out(1, x.letter);
    std::vector<std::string> kids;
    for (int p : d_.preds[static_cast<std::size_t>(v)])
      if (!d_.on_cycle[static_cast<std::size_t>(p)]) kids.push_back(subtree(p));
    std::sort(kids.begin(), kids.end());
    out += '[';
    for (auto& k : kids) out += k + ",";
    out += ']';
    return out;
  }

  int parent(int v) const { return d_.raw.v[static_cast<std::size_t>(v)].parent; }

  bool consistent(int v, int w) const {
    auto rel = [&](const std::vector<int>& r, int a, int b) {
      return r[static_cast<std::size_t>(a)] == b;
    };
    for (int u = 0; u < n_; ++u) {
      int iu = u == v ? w : img_[static_cast<std::size_t>(u)];
      if (iu < 0) continue;
      if ((parent(v) == u) != (parent(w) == iu)) return false;
      if ((parent(u) == v) != (parent(iu) == w)) return false;
      if (rel(d_.partner, v, u) != rel(d_.partner, w, iu)) return false;
      if (rel(d_.mate, v, u) != rel(d_.mate, w, iu)) return false;
    }
    return true;
  }

  void search(int v) {
    if (v == n_) {
      ++total_;
      return;
    }
    for (int w = 0; w < n_; ++w) {
      if (used_[static_cast<std::size_t>(w)]) continue;
      if (colour_[static_cast<std::size_t>(w)] != colour_[static_cast<std::size_t>(v)]) continue;
      if (!consistent(v, w)) continue;
      img_[static_cast<std::size_t>(v)] = w;
      used_[static_cast<std::size_t>(w)] = 1;
      search(v + 1);
      img_[static_cast<std::size_t>(v)] = -1;
      used_[static_cast<std::size_t>(w)] = 0;
    }
  }

  const ForestData& d_;
  int n_;
  std::vector<std::string> colour_;
  std::vector<int> img_;
  std::vector<char> used_;
  std::uint64_t total_ = 0;
};

}  // namespace

std::uint64_t symmetry_sigma(const Forest& f) {
  static std::shared_mutex mu;
  static std::unordered_map<std::string, std::uint64_t> memo;
  {
    std::shared_lock lock(mu);
    auto it = memo.find(f.key());
    if (it != memo.end()) return it->second;
  }
  std::uint64_t s = AutomorphismCounter(f.data()).count();
  std::unique_lock lock(mu);
  memo[f.key()] = s;
  return s;
}

namespace {

int find(std::vector<int>& p, int x) {
  while (p[static_cast<std::size_t>(x)] != x) {
    p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
    x = p[static_cast<std::size_t>(x)];
  }
  return x;
}

RawForest subset(const Forest& f, const std::vector<char>& keep, bool cut) {
  const ForestData& d = f.data();
  const int n = f.size();
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  RawForest out;
  for (int i = 0; i < n; ++i)
    if (keep[static_cast<std::size_t>(i)]) map[static_cast<std::size_t>(i)] = out.add(f.vertex(i));
  for (int i = 0; i < n; ++i) {
    if (!keep[static_cast<std::size_t>(i)]) continue;
    Vertex& x = out.v[static_cast<std::size_t>(map[static_cast<std::size_t>(i)])];
    if (x.parent >= 0) {
      int p = map[static_cast<std::size_t>(x.parent)];
      if (p < 0 && !cut) throw ForestError("subset is not closed");
      x.parent = p;
    }
    if (x.deco == Deco::liana && !keep[static_cast<std::size_t>(d.partner[static_cast<std::size_t>(i)])])
      throw ForestError("subset splits a liana");
  }
  for (auto [a, b] : d.raw.stolons) {
    bool ka = keep[static_cast<std::size_t>(a)], kb = keep[static_cast<std::size_t>(b)];
    if (ka != kb) throw ForestError("subset splits a stolon");
    if (ka) out.stolons.emplace_back(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]);
  }
  return out;
}

}  // namespace

std::vector<Forest> factors(const Forest& f) {
  const ForestData& d = f.data();
  const int n = f.size();
  std::vector<int> uf(static_cast<std::size_t>(n));
  std::iota(uf.begin(), uf.end(), 0);
  auto unite = [&](int a, int b) { uf[static_cast<std::size_t>(find(uf, a))] = find(uf, b); };
  for (int i = 0; i < n; ++i) {
    if (f.vertex(i).parent >= 0) unite(i, f.vertex(i).parent);
    if (d.partner[static_cast<std::size_t>(i)] >= 0) unite(i, d.partner[static_cast<std::size_t>(i)]);
    if (d.mate[static_cast<std::size_t>(i)] >= 0) unite(i, d.mate[static_cast<std::size_t>(i)]);
  }
  std::map<int, std::vector<char>> groups;
  for (int i = 0; i < n; ++i) {
    auto& g = groups[find(uf, i)];
    if (g.empty()) g.assign(static_cast<std::size_t>(n), 0);
    g[static_cast<std::size_t>(i)] = 1;
  }
  std::vector<Forest> out;
  for (auto& [root, keep] : groups) out.push_back(canonicalize(subset(f, keep, false)));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const Forest& f) { return !f.empty() && factors(f).size() == 1; }

Forest concat(const Forest& a, const Forest& b) {
  RawForest r = a.raw();
  r.append(b.raw());
  return canonicalize(r);
}

Forest concat(const std::vector<Forest>& parts) {
  RawForest r;
  for (const auto& p : parts) r.append(p.raw());
  return canonicalize(r);
}

Forest induced(const Forest& f, const std::vector<char>& keep) {
  return canonicalize(subset(f, keep, true));
}

}  // namespace exotic
