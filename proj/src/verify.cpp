#include "exotic/verify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>

#include "exotic/clumped.hpp"
#include "exotic/enumerate.hpp"
#include "exotic/hopf.hpp"
#include "verify_internal.hpp"

namespace exotic {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string format_report(const SuiteReport& r) {
  std::string out;
  for (const auto& c : r.checks) {
    out += std::string(c.passed ? "PASS" : "FAIL") + "  " + r.suite + "/" + c.name + "  (" + std::to_string(c.cases) +
           " cases)";
    if (!c.detail.empty()) out += "  " + c.detail;
    out += "\n";
  }
  out += r.suite + ": " + (r.passed() ? "ok" : "FAILED") + "\n";
  return out;
}

namespace detail {

void Tally::expect(bool ok, const std::function<std::string()>& what) {
  ++result.cases;
  if (!ok && result.passed) {
    result.passed = false;
    result.detail = what();
  }
}

std::string brief(const Series& s) {
  if (s.empty()) return "0";
  std::string out;
  std::size_t n = 0;
  for (const auto& [f, c] : s.terms()) {
    if (n++ == 6) return out + " + ...";
    out += (out.empty() ? "" : " + ") + to_string(c) + " " + f.key();
  }
  return out;
}

std::vector<Forest> forests_upto(int n, Filter filter) { return enumerate(n, filter); }

std::vector<Forest> rooted_trees_upto(int n) {
  std::vector<Forest> out;
  for (const Forest& f : enumerate(n, Filter::eat))
    if (f.order() > 0) out.push_back(f);
  return out;
}

bool single_rooted_factors(const Forest& f) {
  for (const Forest& c : factors(f))
    if (c.grading().num_roots > 1) return false;
  return true;
}

std::uint64_t brute_sigma(const Forest& f) {
  const int n = f.size();
  const ForestData& d = f.data();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  auto same = [&](int v, int w) {
    const Vertex& a = f.vertex(v);
    const Vertex& b = f.vertex(w);
    return a.deco == b.deco && a.letter == b.letter;
  };
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      const int w = perm[static_cast<std::size_t>(v)];
      if (!same(v, w)) ok = false;
      const int p = f.vertex(v).parent;
      const int q = f.vertex(w).parent;
      if ((p < 0) != (q < 0) || (p >= 0 && perm[static_cast<std::size_t>(p)] != q)) ok = false;
      const int lp = d.partner[static_cast<std::size_t>(v)];
      const int lq = d.partner[static_cast<std::size_t>(w)];
      if ((lp < 0) != (lq < 0) || (lp >= 0 && perm[static_cast<std::size_t>(lp)] != lq)) ok = false;
      const int mp = d.mate[static_cast<std::size_t>(v)];
      const int mq = d.mate[static_cast<std::size_t>(w)];
      if ((mp < 0) != (mq < 0) || (mp >= 0 && perm[static_cast<std::size_t>(mp)] != mq)) ok = false;
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Functional random_character(std::mt19937_64& rng, int max_order) {
  std::map<Forest, Rational> gens;
  for (const Forest& f : enumerate(max_order, Filter::connected))
    if (f.order() > 0) gens.emplace(f, random_rational(rng));
  return character_extend(gens, max_order);
}

Functional random_functional(std::mt19937_64& rng, int max_order) {
  Functional out(max_order, false);
  for (const Forest& f : enumerate(max_order)) out.set(f, random_rational(rng));
  return out;
}

Functional random_tree_functional(std::mt19937_64& rng, int max_order) {
  Functional out(max_order, false);
  for (const Forest& f : enumerate(max_order, Filter::eat))
    if (f.order() > 0 && f.is_node(f.data().roots.front())) out.set(f, random_rational(rng));
  return out;
}

}  // namespace detail

using namespace detail;

namespace {

Series one(const Forest& f) { return Series(f, 1); }

Series aroma_part(const Series& s) {
  return s.filtered([](const Forest& f) { return f.grading().num_roots == 0; });
}

Series concat_series(const Series& a, const Series& b) { return multiply(a, b); }

// Triples of forests are checked up to this total order.
int triple_bound(int max_order) { return max_order + 2; }

using Triple = std::map<std::array<std::string, 3>, Rational>;

void add_triple(Triple& t, const std::string& a, const std::string& b, const std::string& c, const Rational& q) {
  auto& slot = t[{a, b, c}];
  slot += q;
  if (slot == 0) t.erase({a, b, c});
}

}  // namespace

CheckResult check_pre_lie(int max_order) {
  Tally t{{"pre-Lie identity"}};
  const auto trees = rooted_trees_upto(max_order);
  for (const Forest& x : trees)
    for (const Forest& y : trees)
      for (const Forest& z : trees) {
        if (x.order() + y.order() + z.order() > triple_bound(max_order) || !(x < y)) continue;
        auto assoc = [&](const Forest& p, const Forest& q) {
          return graft(one(p), graft(one(q), one(z))) - graft(graft(one(p), one(q)), one(z));
        };
        const Series a = assoc(x, y);
        const Series b = assoc(y, x);
        t.expect(a == b, [&] { return x.key() + ", " + y.key() + ", " + z.key() + ": " + brief(a - b); });
      }
  return t.result;
}

CheckResult check_leibniz(int max_order) {
  Tally t{{"Leibniz rules"}};
  const auto trees = rooted_trees_upto(max_order);
  const auto all = forests_upto(max_order);
  for (const Forest& tau : trees)
    for (const Forest& m1 : all)
      for (const Forest& m2 : all) {
        if (tau.order() + m1.order() + m2.order() > triple_bound(max_order) || m2 < m1) continue;
        const Series lhs = graft(one(tau), one(concat(m1, m2)));
        const Series rhs = concat_series(graft(one(tau), one(m1)), one(m2)) + concat_series(one(m1), graft(one(tau), one(m2)));
        t.expect(lhs == rhs, [&] { return "product " + tau.key() + " -> " + m1.key() + " . " + m2.key(); });
      }
  // Stolons: tau -> <g, n> = <tau -> g, n> + <g, tau -> n>.
  for (const Forest& tau : trees)
    for (const Forest& g : trees)
      for (const Forest& n : trees) {
        if (tau.order() + g.order() + n.order() > max_order + 2) continue;
        if (!g.is_node(g.data().roots.front()) || !n.is_node(n.data().roots.front())) continue;
        const Series lhs = graft(one(tau), one(stolon_pair(g, n)));
        Series rhs;
        for (const auto& [x, c] : terms_of(graft(tau, g))) rhs.add(stolon_pair(x, n), c);
        for (const auto& [x, c] : terms_of(graft(tau, n))) rhs.add(stolon_pair(g, x), c);
        t.expect(lhs == rhs, [&] { return "stolon " + tau.key() + " -> <" + g.key() + ", " + n.key() + ">"; });
      }
  return t.result;
}

CheckResult check_guin_oudom(int max_order) {
  Tally t{{"Guin-Oudom relations"}};
  const auto trees = rooted_trees_upto(max_order);
  const auto all = forests_upto(max_order);
  // (ii) (tau . pi) -> nu = tau -> (pi -> nu) - (tau -> pi) -> nu
  for (const Forest& tau : trees)
    for (const Forest& pi : all)
      for (const Forest& nu : all) {
        if (tau.order() + pi.order() + nu.order() > triple_bound(max_order)) continue;
        const Series lhs = graft_forest(one(concat(tau, pi)), one(nu));
        const Series rhs = graft(one(tau), graft_forest(one(pi), one(nu))) - graft_forest(graft(one(tau), one(pi)), one(nu));
        t.expect(lhs == rhs, [&] { return "(ii) " + tau.key() + ", " + pi.key() + ", " + nu.key() + ": " + brief(lhs - rhs); });
      }
  // (iii) pi -> (m1 . m2) = sum (pi1 -> m1) . (pi2 -> m2), factors with one root each
  for (const Forest& pi : all) {
    if (!single_rooted_factors(pi)) continue;
    const ForestTensor d = deshuffle(pi, true);
    for (const Forest& m1 : all)
      for (const Forest& m2 : all) {
        if (pi.order() + m1.order() + m2.order() > triple_bound(max_order) || m2 < m1) continue;
        const Series lhs = graft_forest(pi, concat(m1, m2));
        Series rhs;
        for (const auto& [lr, c] : d.terms())
          rhs += c * concat_series(graft_forest(lr.first, m1), graft_forest(lr.second, m2));
        t.expect(lhs == rhs, [&] { return "(iii) " + pi.key() + " -> " + m1.key() + " . " + m2.key(); });
      }
  }
  return t.result;
}

CheckResult check_gl_associativity(int max_order) {
  Tally t{{"GL associativity"}};
  const auto all = forests_upto(max_order);
  for (const Forest& a : all)
    for (const Forest& b : all)
      for (const Forest& c : all) {
        if (a.order() + b.order() + c.order() > triple_bound(max_order)) continue;
        const Series lhs = gl_product(gl_product(one(a), one(b)), one(c));
        const Series rhs = gl_product(one(a), gl_product(one(b), one(c)));
        t.expect(lhs == rhs, [&] { return a.key() + ", " + b.key() + ", " + c.key() + ": " + brief(lhs - rhs); });
      }
  return t.result;
}

CheckResult check_gl_action(int max_order) {
  Tally t{{"GL product realizes composition of actions"}};
  const auto all = forests_upto(max_order);
  for (const Forest& a : all)
    for (const Forest& b : all)
      for (const Forest& m : all) {
        if (a.order() + b.order() + m.order() > triple_bound(max_order)) continue;
        const Series lhs = graft_forest(one(a), graft_forest(one(b), one(m)));
        const Series rhs = graft_forest(gl_product(one(a), one(b)), one(m));
        t.expect(lhs == rhs, [&] { return a.key() + ", " + b.key() + ", " + m.key() + ": " + brief(lhs - rhs); });
      }
  return t.result;
}

CheckResult check_bck_coassociativity(int max_order) {
  Tally t{{"BCK coassociativity"}};
  for (const Forest& f : forests_upto(max_order + 1)) {
    Triple left, right;
    for (const auto& [lr, c] : terms_of(bck_coproduct(f))) {
      for (const auto& [lr2, c2] : terms_of(bck_coproduct(lr.first)))
        add_triple(left, lr2.first.key(), lr2.second.key(), lr.second.key(), c * c2);
      for (const auto& [lr2, c2] : terms_of(bck_coproduct(lr.second)))
        add_triple(right, lr.first.key(), lr2.first.key(), lr2.second.key(), c * c2);
    }
    t.expect(left == right, [&] { return f.key(); });
  }
  return t.result;
}

CheckResult check_gl_bialgebra(int max_order) {
  // Delta(pi <> mu) = Delta(pi) <> Delta(mu), aroma-linear deshuffle.
  Tally t{{"GL bialgebra compatibility"}};
  const auto all = forests_upto(max_order);
  for (const Forest& a : all) {
    if (!single_rooted_factors(a)) continue;
    for (const Forest& b : all) {
      std::map<std::pair<std::string, std::string>, Rational> lhs, rhs;
      auto put = [](auto& m, const Forest& x, const Forest& y, const Rational& c) {
        auto& slot = m[{x.key(), y.key()}];
        slot += c;
        if (slot == 0) m.erase({x.key(), y.key()});
      };
      for (const auto& [g, c] : terms_of(gl_product(a, b)))
        for (const auto& [lr, c2] : terms_of(deshuffle(g, true))) put(lhs, lr.first, lr.second, c * c2);
      const ForestTensor da = deshuffle(a, true);
      const ForestTensor db = deshuffle(b, true);
      for (const auto& [x, cx] : da.terms())
        for (const auto& [y, cy] : db.terms()) {
          // Aromas sit on the left of both tensors; move the right aromas of
          // the product to the left as well.
          const Series l = gl_product(x.first, y.first);
          const Series r = gl_product(x.second, y.second);
          for (const auto& [p, cp] : l.terms())
            for (const auto& [q, cq] : r.terms()) {
              FactorSplit s = split_factors(q);
              put(rhs, concat(p, concat(s.aromas)), concat(s.rooted), cx * cy * cp * cq);
            }
        }
      t.expect(lhs == rhs, [&] { return a.key() + " <> " + b.key(); });
    }
  }
  return t.result;
}

CheckResult check_antipode(int max_order) {
  // Checked where the primitive factors are single trees (possibly carrying
  // lianas and attached aromas) and on aroma-free forests. A two-root
  // primitive next to a free aroma breaks (1): (b),1,1 leaves -2 (b[1]),1.
  Tally t{{"antipode conditions (1)-(2)"}};
  for (const Forest& f : forests_upto(max_order + 1)) {
    if (!single_rooted_factors(f) && !f.aroma_free()) continue;
    const ForestTensor d = deshuffle(f, true);
    Series first, second;
    for (const auto& [lr, c] : d.terms()) {
      first += c * gl_product(antipode_gl(lr.first), one(lr.second));
      second += c * gl_product(one(lr.first), antipode_gl(lr.second));
    }
    const Series expect1 = aroma_part(antipode_gl(f));
    const Series expect2 = f.grading().num_roots == 0 ? one(f) : Series();
    t.expect(first == expect1, [&] { return "(1) " + f.key() + ": " + brief(first - expect1); });
    t.expect(second == expect2, [&] { return "(2) " + f.key() + ": " + brief(second - expect2); });
  }
  return t.result;
}

CheckResult check_hopf_brace(int max_order) {
  // pi -> (mu -> eta) = (pi1 . (pi2 -> mu)) -> eta
  Tally t{{"Hopf-brace identity"}};
  const auto all = forests_upto(max_order);
  for (const Forest& pi : all) {
    if (!single_rooted_factors(pi)) continue;
    const ForestTensor d = deshuffle(pi, true);
    for (const Forest& mu : all)
      for (const Forest& eta : all) {
        if (pi.order() + mu.order() + eta.order() > triple_bound(max_order)) continue;
        const Series lhs = graft_forest(one(pi), graft_forest(one(mu), one(eta)));
        Series left;
        for (const auto& [lr, c] : d.terms()) left += c * concat_series(one(lr.first), graft_forest(lr.second, mu));
        const Series rhs = graft_forest(left, one(eta));
        t.expect(lhs == rhs, [&] { return pi.key() + ", " + mu.key() + ", " + eta.key() + ": " + brief(lhs - rhs); });
      }
  }
  return t.result;
}

CheckResult check_action_antipode(int max_order) {
  // pi -> S(mu) = S(pi -> mu), S the antipode of the deshuffle Hopf algebra.
  Tally t{{"action commutes with antipode"}};
  const auto all = forests_upto(max_order);
  auto S = [](const Series& s) {
    Series out;
    for (const auto& [f, c] : s.terms()) out += c * antipode_deshuffle(f, true);
    return out;
  };
  for (const Forest& pi : all) {
    if (!single_rooted_factors(pi)) continue;
    for (const Forest& mu : all) {
      const Series lhs = graft_forest(one(pi), antipode_deshuffle(mu, true));
      const Series rhs = S(graft_forest(pi, mu));
      t.expect(lhs == rhs, [&] { return pi.key() + " -> " + mu.key(); });
    }
  }
  return t.result;
}

CheckResult check_duality(int max_order) {
  Tally t{{"duality pairings"}};
  const auto all = forests_upto(max_order);
  std::map<std::string, Rational> sig;
  auto sigma = [&](const Forest& f) {
    auto it = sig.find(f.key());
    if (it == sig.end()) it = sig.emplace(f.key(), Rational(static_cast<unsigned long>(brute_sigma(f)))).first;
    return it->second;
  };
  auto csigma = [&](const ClumpedForest& p) {
    // Component symmetries times the factorials of repeated components.
    Rational s = 1;
    std::map<std::string, int> mult;
    for (std::size_t i = 0; i < p.components().size(); ++i) {
      s *= sigma(p.components()[i]);
      std::string tag = p.tags().empty() ? std::string() : std::string(1, p.tags()[i]);
      s *= ++mult[p.components()[i].key() + "@" + tag];
    }
    return s;
  };
  for (const Forest& eta : all) {
    const ForestTensor bck = bck_coproduct(eta);
    const ForestTensor desh = deshuffle(eta);
    for (const Forest& a : all)
      for (const Forest& b : all) {
        if (a.order() + b.order() != eta.order()) continue;
        const Rational lhs_gl = gl_product(a, b).coeff(eta) * sigma(eta);
        const Rational rhs_gl = bck.coeff(a, b) * sigma(a) * sigma(b);
        t.expect(lhs_gl == rhs_gl, [&] { return "GL/BCK at " + a.key() + " (x) " + b.key() + " -> " + eta.key(); });
        const Rational lhs_c = (concat(a, b) == eta ? Rational(1) : Rational(0)) * sigma(eta);
        const Rational rhs_c = desh.coeff(a, b) * sigma(a) * sigma(b);
        t.expect(lhs_c == rhs_c, [&] { return "concat/deshuffle at " + a.key() + " (x) " + b.key() + " -> " + eta.key(); });
      }
    // Substitution: <Delta_CEM eta, p (x) r> sigma(p) sigma(r) = sigma(eta) <p |> r, eta>.
    for (const auto& [pr, c] : terms_of(cem_coaction(eta))) {
      const Rational lhs = c * csigma(pr.first) * sigma(pr.second);
      const Rational rhs = sigma(eta) * substitute_action(pr.first, pr.second).coeff(eta);
      t.expect(lhs == rhs, [&] { return "CEM at " + eta.key() + ": " + pr.first.key() + " (x) " + pr.second.key(); });
      for (const auto& [g, cg] : terms_of(substitute_action(pr.first, pr.second))) {
        if (g.order() > max_order) continue;
        const Rational back = cem_coaction(g).coeff(pr.first, pr.second) * csigma(pr.first) * sigma(pr.second);
        t.expect(back == sigma(g) * cg, [&] { return "substitution image " + g.key(); });
      }
    }
    // Phi*: every clumping p of eta with coefficient sigma(eta)/sigma(p).
    std::map<ClumpedForest, Rational> brute;
    const FactorSplit s = split_factors(eta);
    if (s.rooted.empty()) {
      if (!eta.empty()) brute[ClumpedForest({eta})] = 1;
    } else {
      std::vector<int> slot(s.aromas.size(), 0);
      while (true) {
        std::vector<std::vector<Forest>> parts(s.rooted.size());
        for (std::size_t i = 0; i < s.rooted.size(); ++i) parts[i].push_back(s.rooted[i]);
        for (std::size_t j = 0; j < s.aromas.size(); ++j) parts[static_cast<std::size_t>(slot[j])].push_back(s.aromas[j]);
        std::vector<Forest> comps;
        for (auto& p : parts) comps.push_back(concat(p));
        brute[ClumpedForest(comps)] = 1;
        std::size_t k = 0;
        while (k < slot.size() && ++slot[k] == static_cast<int>(s.rooted.size())) slot[k++] = 0;
        if (k == slot.size()) break;
      }
    }
    for (auto& [p, c] : brute) c = sigma(eta) / csigma(p);
    if (eta.empty()) brute[ClumpedForest()] = 1;
    const auto ps = phi_star(eta);
    t.expect(ps == brute, [&] { return "Phi* at " + eta.key(); });
    for (const auto& [p, c] : ps) t.expect(phi(p) == eta, [&] { return "Phi o Phi* at " + eta.key(); });
  }
  return t.result;
}

CheckResult check_cointeraction(int max_order, std::uint64_t seed) {
  Tally t{{"cointeraction of substitution and composition"}};
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 3; ++trial) {
    const Functional a0 = random_tree_functional(rng, max_order);
    const Functional b = random_functional(rng, max_order);
    const Functional c = random_functional(rng, max_order);
    const Functional lhs = substitute(a0, compose(b, c));
    const Functional rhs = compose(substitute(a0, b), substitute(a0, c));
    for (const Forest& f : forests_upto(max_order))
      t.expect(lhs(f) == rhs(f), [&] { return "trial " + std::to_string(trial) + " at " + f.key(); });
  }
  return t.result;
}

SuiteReport run_hopf_suite(int max_order) {
  SuiteReport r{"hopf", {}};
  r.checks.push_back(check_pre_lie(max_order));
  r.checks.push_back(check_leibniz(max_order));
  r.checks.push_back(check_guin_oudom(max_order));
  r.checks.push_back(check_gl_associativity(max_order));
  r.checks.push_back(check_gl_action(max_order));
  r.checks.push_back(check_bck_coassociativity(max_order));
  r.checks.push_back(check_gl_bialgebra(max_order));
  r.checks.push_back(check_antipode(max_order));
  r.checks.push_back(check_hopf_brace(max_order));
  r.checks.push_back(check_action_antipode(max_order));
  r.checks.push_back(check_duality(max_order));
  r.checks.push_back(check_cointeraction(max_order, 7));
  return r;
}

}  // namespace exotic
