#include "exotic/hopf.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "exotic/enumerate.hpp"

namespace exotic {

namespace {

std::size_t U(int i) { return static_cast<std::size_t>(i); }

std::vector<int> node_vertices(const Forest& f) {
  std::vector<int> out;
  for (int i = 0; i < f.size(); ++i)
    if (f.is_node(i)) out.push_back(i);
  return out;
}

int root_of(const Forest& tau) {
  if (!tau.single_root()) throw ForestError("expected a single root: " + tau.key());
  return tau.data().roots.front();
}

// Odometer over digits with the given bases; returns false once exhausted.
bool advance(std::vector<int>& digits, const std::vector<int>& bases) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < bases[i]) return true;
    digits[i] = 0;
  }
  return false;
}

template <class V>
class Memo {
 public:
  template <class F>
  V get(const std::string& key, F&& compute) {
    {
      std::shared_lock lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    V value = compute();
    std::unique_lock lock(mu_);
    map_.emplace(key, value);
    return value;
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<std::string, V> map_;
};

}  // namespace

Series graft(const Forest& tau, const Forest& gamma) {
  const int r = root_of(tau);
  Series out;
  for (int v : node_vertices(gamma)) {
    RawForest raw = gamma.raw();
    auto map = raw.append(tau.raw());
    raw.v[U(map[U(r)])].parent = v;
    out.add(canonicalize(raw), 1);
  }
  return out;
}

Series graft(const Series& tau, const Series& gamma) {
  Series out(std::min(tau.truncation(), gamma.truncation()));
  for (const auto& [t, ct] : tau.terms())
    for (const auto& [g, cg] : gamma.terms()) out += (ct * cg) * graft(t, g);
  return out;
}

Series graft_forest(const Forest& pi, const Forest& nu) {
  const auto& roots = pi.data().roots;
  Series out;
  if (roots.empty()) {
    out.add(concat(pi, nu), 1);
    return out;
  }
  const std::vector<int> nodes = node_vertices(nu);
  if (nodes.empty()) return out;
  std::vector<int> digits(roots.size(), 0);
  std::vector<int> bases(roots.size(), static_cast<int>(nodes.size()));
  do {
    RawForest raw = nu.raw();
    auto map = raw.append(pi.raw());
    for (std::size_t i = 0; i < roots.size(); ++i) raw.v[U(map[U(roots[i])])].parent = nodes[U(digits[i])];
    out.add(canonicalize(raw), 1);
  } while (advance(digits, bases));
  return out;
}

Series graft_forest(const Series& pi, const Series& nu) {
  Series out(std::min(pi.truncation(), nu.truncation()));
  for (const auto& [p, cp] : pi.terms())
    for (const auto& [n, cn] : nu.terms()) out += (cp * cn) * graft_forest(p, n);
  return out;
}

Series divergence(const Forest& tau) {
  const int r = root_of(tau);
  Series out;
  for (int v : node_vertices(tau)) {
    RawForest raw = tau.raw();
    raw.v[U(r)].parent = v;
    out.add(canonicalize(raw), 1);
  }
  return out;
}

Forest stolon_pair(const Forest& tau, const Forest& gamma) {
  const int a = root_of(tau);
  const int b = root_of(gamma);
  if (!tau.is_node(a) || !gamma.is_node(b)) throw ForestError("stolon endpoints must be node vertices");
  RawForest raw = tau.raw();
  auto map = raw.append(gamma.raw());
  raw.stolons.emplace_back(a, map[U(b)]);
  return canonicalize(raw);
}

Series gl_product(const Forest& a, const Forest& b) {
  const auto& roots = a.data().roots;
  const std::vector<int> nodes = node_vertices(b);
  // Digit nodes.size() keeps the root in place.
  std::vector<int> digits(roots.size(), 0);
  std::vector<int> bases(roots.size(), static_cast<int>(nodes.size()) + 1);
  Series out;
  do {
    RawForest raw = b.raw();
    auto map = raw.append(a.raw());
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (digits[i] < static_cast<int>(nodes.size())) raw.v[U(map[U(roots[i])])].parent = nodes[U(digits[i])];
    out.add(canonicalize(raw), 1);
  } while (advance(digits, bases));
  return out;
}

Series gl_product(const Series& a, const Series& b) {
  Series out(std::min(a.truncation(), b.truncation()));
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) {
      if (x.order() + y.order() > out.truncation()) continue;
      out += (cx * cy) * gl_product(x, y);
    }
  return out;
}

Series antipode_gl(const Forest& f) {
  static Memo<Series> memo;
  return memo.get(f.key(), [&]() -> Series {
    if (f.empty()) return Series(f, 1);
    FactorSplit s = split_factors(f);
    if (!s.aromas.empty()) {
      Forest omega = concat(s.aromas);
      if (s.rooted.empty()) return Series(f, 1);
      return gl_product(antipode_gl(concat(s.rooted)), Series(omega, 1));
    }
    if (s.rooted.size() == 1) return Series(f, -1);
    Forest tau = s.rooted.front();
    Forest rest = concat(std::vector<Forest>(s.rooted.begin() + 1, s.rooted.end()));
    Series out = gl_product(antipode_gl(rest), Series(tau, 1));
    // tau is primitive: the pre-Lie product is tau <> rest - tau . rest.
    Series pre_lie = gl_product(tau, rest);
    pre_lie.add(concat(tau, rest), -1);
    out += antipode_gl(pre_lie);
    out *= -1;
    return out;
  });
}

Series antipode_gl(const Series& s) {
  Series out(s.truncation());
  for (const auto& [f, c] : s.terms()) out += c * antipode_gl(f);
  return out;
}

ForestTensor deshuffle(const Forest& f, bool aroma_linear) {
  std::vector<Forest> fixed;
  std::vector<Forest> free;
  if (aroma_linear) {
    FactorSplit s = split_factors(f);
    fixed = s.aromas;
    free = s.rooted;
  } else {
    free = factors(f);
  }
  ForestTensor out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
    std::vector<Forest> left = fixed;
    std::vector<Forest> right;
    for (std::size_t i = 0; i < free.size(); ++i) ((mask >> i) & 1u ? right : left).push_back(free[i]);
    out.add(concat(left), concat(right), 1);
  }
  return out;
}

Series antipode_deshuffle(const Forest& f, bool aroma_linear) {
  std::size_t k = aroma_linear ? split_factors(f).rooted.size() : factors(f).size();
  return Series(f, k % 2 ? -1 : 1);
}

ForestTensor bck_coproduct(const Forest& f) {
  static Memo<ForestTensor> memo;
  return memo.get(f.key(), [&] {
    const ForestData& d = f.data();
    const int n = f.size();
    ForestTensor out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      auto in = [&](int v) { return ((mask >> v) & 1u) != 0; };
      bool ok = true;
      for (int v = 0; v < n && ok; ++v) {
        if (!in(v)) continue;
        int p = f.vertex(v).parent;
        if (p >= 0 && !in(p)) ok = false;
      }
      for (int v = 0; v < n && ok; ++v) {
        int q = d.partner[U(v)] >= 0 ? d.partner[U(v)] : d.mate[U(v)];
        if (q >= 0 && in(v) != in(q)) ok = false;
      }
      if (!ok) continue;
      std::vector<char> keep(U(n)), rest(U(n));
      for (int v = 0; v < n; ++v) {
        keep[U(v)] = in(v);
        rest[U(v)] = !in(v);
      }
      out.add(induced(f, rest), induced(f, keep), 1);
    }
    return out;
  });
}

namespace {

enum class RootKind { vertex, cut, numbered };

struct RootOption {
  RootKind kind;
  int v;  // root vertex, cut vertex, or numbered liana vertex
};

// Shared enumeration for the exotic and the decorated coaction.
ClumpedTensor contractions(const Forest& f, std::string_view alphabet) {
  const bool decorated = !alphabet.empty();
  const ForestData& d = f.data();
  const int n = f.size();
  if (decorated && d.grading.num_lianas > 0) throw ForestError("decorated coaction does not support lianas");

  std::vector<int> items;
  for (int v = 0; v < n; ++v)
    if (decorated ? f.is_node(v) : f.is_black(v)) items.push_back(v);

  std::vector<std::pair<int, int>> lianas;
  for (int v = 0; v < n; ++v)
    if (f.is_liana(v) && d.partner[U(v)] > v) lianas.emplace_back(v, d.partner[U(v)]);

  ClumpedTensor out;
  const std::size_t m = items.size();
  std::vector<int> rgs(m, 0);  // restricted growth string
  while (true) {
    int nblocks = 0;
    for (int x : rgs) nblocks = std::max(nblocks, x + 1);
    if (m == 0) nblocks = 0;
    std::vector<int> block_of(U(n), -1);
    std::vector<std::vector<int>> blocks(U(nblocks));
    for (std::size_t i = 0; i < m; ++i) {
      block_of[U(items[i])] = rgs[i];
      blocks[U(rgs[i])].push_back(items[i]);
    }
    auto parent_block = [&](int v) {
      int p = f.vertex(v).parent;
      return p >= 0 ? block_of[U(p)] : -1;
    };

    std::vector<std::vector<RootOption>> options(U(nblocks));
    bool valid = true;
    for (int b = 0; b < nblocks && valid; ++b) {
      std::vector<int> exits;
      for (int v : blocks[U(b)]) {
        int p = f.vertex(v).parent;
        if (p >= 0) {
          if (block_of[U(p)] != b) exits.push_back(v);
        } else {
          int mt = d.mate[U(v)];
          if (mt < 0 || block_of[U(mt)] != b) exits.push_back(v);
        }
      }
      auto& opt = options[U(b)];
      if (exits.size() == 1) {
        opt.push_back({RootKind::vertex, exits[0]});
      } else if (exits.empty()) {
        for (int v : blocks[U(b)])
          if (f.vertex(v).parent >= 0) opt.push_back({RootKind::cut, v});
        for (auto [x, y] : lianas) {
          if (parent_block(y) == b) opt.push_back({RootKind::numbered, x});
          if (parent_block(x) == b) opt.push_back({RootKind::numbered, y});
        }
      }
      if (opt.empty()) valid = false;
    }

    if (valid) {
      std::vector<int> choice(U(nblocks), 0);
      std::vector<int> choice_bases(U(nblocks));
      for (int b = 0; b < nblocks; ++b) choice_bases[U(b)] = static_cast<int>(options[U(b)].size());
      do {
        // liana status: 0 external, 1 absorbed, 2 used by a numbered root
        std::vector<int> fixed_status(lianas.size(), -1);
        bool clash = false;
        for (int b = 0; b < nblocks; ++b) {
          const RootOption& o = options[U(b)][U(choice[U(b)])];
          if (o.kind != RootKind::numbered) continue;
          for (std::size_t i = 0; i < lianas.size(); ++i)
            if (lianas[i].first == o.v || lianas[i].second == o.v) {
              if (fixed_status[i] >= 0) clash = true;
              fixed_status[i] = 2;
            }
        }
        if (clash) continue;
        std::vector<int> status_bases(lianas.size());
        for (std::size_t i = 0; i < lianas.size(); ++i) {
          auto [x, y] = lianas[i];
          int bx = parent_block(x), by = parent_block(y);
          status_bases[i] = fixed_status[i] >= 0 ? 1 : (bx >= 0 && bx == by ? 2 : 1);
        }
        std::vector<int> status(lianas.size(), 0);
        const std::size_t ntags = decorated ? alphabet.size() : 1;
        do {
          auto liana_state = [&](std::size_t i) { return fixed_status[i] >= 0 ? 2 : status[i]; };
          std::vector<int> absorbed_in(U(n), -1);  // liana vertex -> block holding it in p
          for (std::size_t i = 0; i < lianas.size(); ++i) {
            auto [x, y] = lianas[i];
            if (liana_state(i) == 1) {
              absorbed_in[U(x)] = absorbed_in[U(y)] = parent_block(x);
            } else if (liana_state(i) == 2) {
              int b = parent_block(x);
              for (int bb = 0; bb < nblocks; ++bb) {
                const RootOption& o = options[U(bb)][U(choice[U(bb)])];
                if (o.kind == RootKind::numbered && (o.v == x || o.v == y)) b = bb;
              }
              absorbed_in[U(x)] = absorbed_in[U(y)] = b;
            }
          }

          std::vector<Forest> parts;
          for (int b = 0; b < nblocks; ++b) {
            const RootOption& o = options[U(b)][U(choice[U(b)])];
            RawForest r;
            std::vector<int> idx(U(n), -1);
            for (int v : blocks[U(b)]) idx[U(v)] = r.add(f.vertex(v));
            for (int v = 0; v < n; ++v)
              if (absorbed_in[U(v)] == b) idx[U(v)] = r.add(f.vertex(v));
            for (int v = 0; v < n; ++v) {
              if (idx[U(v)] < 0) continue;
              int p = f.vertex(v).parent;
              int np = p >= 0 ? idx[U(p)] : -1;
              if ((o.kind == RootKind::cut || o.kind == RootKind::numbered) && v == o.v) np = -1;
              r.v[U(idx[U(v)])].parent = np;
            }
            for (auto [a, c] : d.raw.stolons)
              if (block_of[U(a)] == b && block_of[U(c)] == b) r.stolons.emplace_back(idx[U(a)], idx[U(c)]);
            parts.push_back(canonicalize(r));
          }

          std::vector<int> tag(U(nblocks), 0);
          std::vector<int> tag_bases(U(nblocks), static_cast<int>(ntags));
          do {
            RawForest r;
            std::vector<int> cx(U(nblocks));
            for (int b = 0; b < nblocks; ++b)
              cx[U(b)] = decorated ? r.add_letter(alphabet[U(tag[U(b)])]) : r.add_black();
            std::vector<int> idx(U(n), -1);
            for (int v = 0; v < n; ++v)
              if (block_of[U(v)] < 0 && absorbed_in[U(v)] < 0) idx[U(v)] = r.add(f.vertex(v));
            auto image = [&](int v) { return block_of[U(v)] >= 0 ? cx[U(block_of[U(v)])] : idx[U(v)]; };
            for (int v = 0; v < n; ++v) {
              if (idx[U(v)] < 0) continue;
              int p = f.vertex(v).parent;
              r.v[U(idx[U(v)])].parent = p >= 0 ? image(p) : -1;
            }
            for (int b = 0; b < nblocks; ++b) {
              const RootOption& o = options[U(b)][U(choice[U(b)])];
              int p = f.vertex(o.v).parent;
              int np = -1;
              if (o.kind == RootKind::cut)
                np = cx[U(b)];
              else if (p >= 0)
                np = image(p);
              r.v[U(cx[U(b)])].parent = np;
            }
            for (auto [a, c] : d.raw.stolons) {
              if (block_of[U(a)] >= 0 && block_of[U(a)] == block_of[U(c)]) continue;
              r.stolons.emplace_back(image(a), image(c));
            }
            std::string tags;
            if (decorated)
              for (int b = 0; b < nblocks; ++b) tags.push_back(alphabet[U(tag[U(b)])]);
            out.add(ClumpedForest(parts, tags), canonicalize(r), 1);
          } while (advance(tag, tag_bases));
        } while (advance(status, status_bases));
      } while (advance(choice, choice_bases));
    }

    // next restricted growth string
    std::size_t i = m;
    bool more = false;
    while (i-- > 1) {
      int mx = 0;
      for (std::size_t j = 0; j < i; ++j) mx = std::max(mx, rgs[j]);
      if (rgs[i] <= mx) {
        ++rgs[i];
        std::fill(rgs.begin() + static_cast<std::ptrdiff_t>(i) + 1, rgs.end(), 0);
        more = true;
        break;
      }
    }
    if (!more) break;
  }
  if (out.size() == 0) out.add(ClumpedForest(), f, 1);
  return out;
}

}  // namespace

ClumpedTensor cem_coaction(const Forest& f) {
  static Memo<ClumpedTensor> memo;
  return memo.get(f.key(), [&] { return contractions(f, {}); });
}

ClumpedTensor cem_coaction_reduced(const Forest& f) {
  ClumpedTensor out = cem_coaction(f);
  std::vector<Forest> singles(U(f.grading().num_black), parse("b"));
  out.add(ClumpedForest(singles), f, -1);
  out.add(ClumpedForest({f}), parse("b"), -1);
  return out;
}

ClumpedTensor cem_coaction_decorated(const Forest& f, std::string_view alphabet) {
  if (alphabet.empty()) throw ForestError("empty decoration alphabet");
  return contractions(f, alphabet);
}

Series substitute_action(const ClumpedForest& p, const Forest& pi) {
  const bool tagged = !p.tags().empty();
  const int n = pi.size();
  const ForestData& d = pi.data();
  const auto& comps = p.components();
  for (const Forest& c : comps)
    if (!c.single_root()) throw ForestError("substituted components need a single root: " + c.key());

  // Targets grouped by decoration; untagged p substitutes black vertices.
  std::string decos = tagged ? p.tags() : std::string(comps.size(), 'b');
  std::string letters = decos;
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  std::vector<int> target_of(U(n), -1);
  std::vector<std::vector<int>> targets(letters.size()), pool(letters.size());
  for (std::size_t g = 0; g < letters.size(); ++g) {
    for (int v = 0; v < n; ++v)
      if (pi.is_node(v) && pi.vertex(v).letter == letters[g]) targets[g].push_back(v);
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (decos[i] == letters[g]) pool[g].push_back(static_cast<int>(i));
    if (targets[g].size() != pool[g].size()) return Series();
  }
  for (int v = 0; v < n; ++v)
    if (pi.is_node(v) && letters.find(pi.vertex(v).letter) == std::string::npos && (!tagged ? pi.is_black(v) : true))
      return Series();

  Series out;
  std::vector<std::vector<int>> perm = pool;
  while (true) {
    std::vector<int> comp_at(U(n), -1);
    for (std::size_t g = 0; g < letters.size(); ++g)
      for (std::size_t i = 0; i < targets[g].size(); ++i) comp_at[U(targets[g][i])] = perm[g][i];

    RawForest r;
    std::vector<int> idx(U(n), -1);
    for (int v = 0; v < n; ++v)
      if (comp_at[U(v)] < 0) idx[U(v)] = r.add(pi.vertex(v));
    std::vector<std::vector<int>> embed(U(n));
    for (int v = 0; v < n; ++v)
      if (comp_at[U(v)] >= 0) embed[U(v)] = r.append(comps[U(comp_at[U(v)])].raw());
    // Vertex carrying the out-edge of v in the result.
    auto carrier = [&](int v) {
      if (comp_at[U(v)] < 0) return idx[U(v)];
      return embed[U(v)][U(root_of(comps[U(comp_at[U(v)])]))];
    };
    bool ok = true;
    std::vector<int> slot_child, slot_bases;
    std::vector<std::vector<int>> slot_nodes;
    for (int v = 0; v < n; ++v) {
      int x = pi.vertex(v).parent;
      int c = carrier(v);
      if (x < 0) {
        r.v[U(c)].parent = -1;
      } else if (comp_at[U(x)] < 0) {
        r.v[U(c)].parent = idx[U(x)];
      } else {
        const Forest& t = comps[U(comp_at[U(x)])];
        std::vector<int> nodes;
        for (int u : node_vertices(t)) nodes.push_back(embed[U(x)][U(u)]);
        slot_child.push_back(c);
        slot_bases.push_back(static_cast<int>(nodes.size()));
        slot_nodes.push_back(std::move(nodes));
      }
    }
    for (auto [a, b] : d.raw.stolons) {
      int ca = carrier(a), cb = carrier(b);
      if (r.v[U(ca)].deco == Deco::liana || r.v[U(cb)].deco == Deco::liana) ok = false;
      r.stolons.emplace_back(ca, cb);
    }
    if (ok) {
      std::vector<int> pick(slot_child.size(), 0);
      do {
        RawForest q = r;
        for (std::size_t s = 0; s < slot_child.size(); ++s) q.v[U(slot_child[s])].parent = slot_nodes[s][U(pick[s])];
        out.add(canonicalize(q), 1);
      } while (advance(pick, slot_bases));
    }

    std::size_t g = 0;
    while (g < perm.size() && !std::next_permutation(perm[g].begin(), perm[g].end())) ++g;
    if (g == perm.size()) break;
  }
  return out;
}

Functional compose(const Functional& a, const Functional& b) {
  const int t = std::min(a.truncation(), b.truncation());
  if (t == kNoTruncation) throw ForestError("compose needs a truncation order");
  Functional out(t, false);
  for (const Forest& f : enumerate(t)) {
    Rational v = 0;
    const ForestTensor d = bck_coproduct(f);
    for (const auto& [lr, c] : d.terms()) {
      Rational x = a(lr.first);
      if (x == 0) continue;
      v += c * x * b(lr.second);
    }
    out.set(f, v);
  }
  return out;
}

Functional substitute(const Functional& b0, const Functional& a) {
  const int t = std::min(b0.truncation(), a.truncation());
  if (t == kNoTruncation) throw ForestError("substitute needs a truncation order");
  Functional out(t, false);
  for (const Forest& f : enumerate(t)) {
    Rational v = 0;
    const ClumpedTensor d = cem_coaction(f);
    for (const auto& [lr, c] : d.terms()) {
      Rational x = clumped_character(b0, lr.first);
      if (x == 0) continue;
      v += c * x * a(lr.second);
    }
    out.set(f, v);
  }
  return out;
}

}  // namespace exotic
