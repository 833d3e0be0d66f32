#include "exotic/stochastic.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "exotic/convolution.hpp"
#include "exotic/enumerate.hpp"
#include "exotic/hopf.hpp"

namespace exotic {

namespace {

std::size_t U(int i) { return static_cast<std::size_t>(i); }

std::string trim(std::string_view s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<Rational> parse_row(const std::string& text) {
  std::istringstream in(text);
  std::vector<Rational> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_rational(tok));
  return out;
}

std::string format_row(const std::vector<Rational>& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + to_string(row[i]);
  return out;
}

Functional truncated(Functional x, int n) {
  x.set_truncation(n);
  return x;
}

}  // namespace

void SRKTableau::validate() const {
  if (s < 1) throw std::invalid_argument("tableau needs at least one stage");
  if (static_cast<int>(A.size()) != s || static_cast<int>(b.size()) != s || static_cast<int>(d.size()) != s)
    throw std::invalid_argument("tableau dimensions do not match s");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != s) throw std::invalid_argument("A must be s x s");
}

bool SRKTableau::explicit_method() const {
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      if (A[U(i)][U(j)] != 0) return false;
  return true;
}

SRKTableau parse_tableau(std::string_view text) {
  SRKTableau t;
  t.A.clear();
  bool have_s = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key = value: " + line);
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "s") {
      t.s = std::stoi(value);
      have_s = true;
    } else if (key == "A") {
      std::istringstream rows(value);
      std::string row;
      while (std::getline(rows, row, ';')) t.A.push_back(parse_row(row));
    } else if (key == "b") {
      t.b = parse_row(value);
    } else if (key == "d") {
      t.d = parse_row(value);
    } else if (key == "d0") {
      t.d0 = parse_rational(value);
    } else {
      throw std::invalid_argument("unknown tableau key: " + key);
    }
  }
  if (!have_s) t.s = static_cast<int>(t.b.size());
  if (t.A.empty()) t.A.assign(U(t.s), std::vector<Rational>(U(t.s), 0));
  if (t.d.empty()) t.d.assign(U(t.s), 0);
  t.validate();
  return t;
}

std::string format_tableau(const SRKTableau& t) {
  std::string out = "s = " + std::to_string(t.s) + "\nA = ";
  for (int i = 0; i < t.s; ++i) out += (i ? "; " : "") + format_row(t.A[U(i)]);
  out += "\nb = " + format_row(t.b) + "\nd = " + format_row(t.d) + "\nd0 = " + to_string(t.d0) + "\n";
  return out;
}

SRKTableau named_tableau(std::string_view name) {
  if (name == "em") return parse_tableau("s = 1\nA = 0\nb = 1\nd = 0\nd0 = 1");
  if (name == "implicit-euler") return parse_tableau("s = 1\nA = 1\nb = 1\nd = 1\nd0 = 1");
  if (name == "trapezoid") return parse_tableau("s = 2\nA = 0 0; 1/2 1/2\nb = 1/2 1/2\nd = 0 1\nd0 = 1");
  if (name == "lm") return parse_tableau("s = 1\nA = 0\nb = 1\nd = 1/2\nd0 = 1");
  if (name == "lm-post") return parse_tableau("s = 1\nA = 0\nb = 0\nd = 0\nd0 = 1/2");
  throw std::invalid_argument("unknown method: " + std::string(name));
}

Functional generator_character() {
  Functional l(kNoTruncation, false);
  l.set(parse("b"), 1);
  l.set(parse("1,1"), 1);
  return l;
}

Functional exact_flow_character(int max_order) {
  return exp_conv(Coproduct::bck, truncated(generator_character(), max_order));
}

Rational srk_weight(const SRKTableau& t, const Forest& pi) {
  const Grading& g = pi.grading();
  if (g.num_aromas > 0 || g.num_letters > 0 || g.num_stolons > 0) return 0;
  std::vector<int> black;
  std::vector<int> slot(U(pi.size()), -1);
  for (int v = 0; v < pi.size(); ++v)
    if (pi.is_black(v)) {
      slot[U(v)] = static_cast<int>(black.size());
      black.push_back(v);
    }
  Rational total = 0;
  std::vector<int> stage(black.size(), 0);
  while (true) {
    Rational w = 1;
    for (int v = 0; v < pi.size() && w != 0; ++v) {
      const int p = pi.vertex(v).parent;
      const int sp = p >= 0 ? stage[U(slot[U(p)])] : -1;
      if (pi.is_black(v)) {
        const int sv = stage[U(slot[U(v)])];
        w *= p < 0 ? t.b[U(sv)] : t.A[U(sp)][U(sv)];
      } else {
        w *= p < 0 ? t.d0 : t.d[U(sp)];
      }
    }
    total += w;
    std::size_t k = 0;
    while (k < stage.size() && ++stage[k] == t.s) stage[k++] = 0;
    if (k == stage.size()) break;
  }
  return total;
}

Functional srk_character(const SRKTableau& t, int max_order) {
  t.validate();
  std::map<Forest, Rational> gens;
  for (const Forest& f : enumerate(max_order, Filter::connected)) {
    if (f.order() == 0) continue;
    Rational w = srk_weight(t, f);
    if (w != 0) gens.emplace(f, w);
  }
  return character_extend(gens, max_order);
}

std::vector<OrderCondition> weak_order_conditions(int p) {
  const Functional e = exact_flow_character(p);
  std::vector<OrderCondition> out;
  for (const Forest& f : enumerate(p, Filter::no_aromas))
    if (f.order() > 0) out.push_back({f, e(f)});
  return out;
}

OrderReport check_weak_order(const Functional& a, int p) {
  OrderReport r;
  r.requested = p;
  const auto conds = weak_order_conditions(p);
  for (int q = 1; q <= p; ++q) {
    for (const auto& c : conds)
      if (c.forest.order() == q && a(c.forest) != c.value) r.defect.add(c.forest, a(c.forest) - c.value);
    if (!r.defect.empty()) return r;
    r.order = q;
  }
  return r;
}

OrderReport equivalent_to_zero(const Functional& x, int p) {
  OrderReport r;
  r.requested = p;
  IBPOptions opt;
  opt.reduce_trees = true;
  for (int q = 1; q <= p; ++q) {
    Series s;
    for (const Forest& f : forests_of_order(q)) {
      Rational v = x(f);
      if (v != 0) s.add(f, v / Rational(symmetry_sigma(f)));
    }
    IBPNormalForm nf = ibp_normalize(s, opt);
    if (q >= 4) r.beyond_unique_range = true;
    if (!nf.trees.empty() || !nf.residual.empty()) {
      r.defect = nf.trees;
      r.residual = nf.residual;
      return r;
    }
    r.order = q;
  }
  return r;
}

OrderReport invariant_measure_order(const Functional& a, int p) {
  return equivalent_to_zero(truncated(a, p) - delta_one(), p);
}

OrderReport postprocessor_check(const Functional& a, const Functional& abar, int p) {
  const Functional l = truncated(generator_character(), p);
  const Functional ab = truncated(abar, p);
  Functional x = truncated(a, p) - delta_one() + compose(l, ab) - compose(ab, l);
  return equivalent_to_zero(x, p);
}

Series tree_series(const Functional& b, int max_order) {
  Series out;
  for (const Forest& f : enumerate(max_order, Filter::et)) {
    Rational v = b(f);
    if (v != 0) out.add(f, v / Rational(symmetry_sigma(f)));
  }
  return out;
}

namespace {

void absorb(ModifiedField& out, const IBPMap& m, const Rational& sign) {
  out.b = out.b + sign * m.value;
  out.residual += sign * m.residual;
}

ModifiedField solve(const Functional& a, const Functional& target, int n, BEAMethod method, bool inverse) {
  // inverse: b_c star a ~ delta_1, otherwise b_c star target ~ a.
  ModifiedField out{truncated(delta_bullet(), n), Series()};
  if (method == BEAMethod::recursion) {
    for (int k = 1; k <= n; ++k) {
      Functional x = inverse ? Rational(-1) * substitute(out.b, a) : a - substitute(out.b, target);
      absorb(out, ibp_map(x, n), 1);
    }
  } else {
    Functional x = inverse ? Rational(-1) * a : a - target;
    const Functional& right = inverse ? a : target;
    for (int k = 0; k < n; ++k) {
      IBPMap m = ibp_map(x, n);
      absorb(out, m, k % 2 == 0 ? 1 : -1);
      x = convolve_linear_left(Coproduct::cem_reduced, m.value, right);
    }
  }
  Functional clean(n, false);
  for (const auto& [f, v] : out.b.stored())
    if (v != 0 && f.is_exotic_tree()) clean.set(f, v);
  out.b = clean;
  return out;
}

}  // namespace

ModifiedField bea_modified_field(const Functional& a, int max_order, BEAMethod method) {
  return solve(truncated(a, max_order), exact_flow_character(max_order), max_order, method, false);
}

ModifiedField modified_equation(const Functional& a, int max_order, BEAMethod method) {
  return solve(truncated(a, max_order), Functional(), max_order, method, true);
}

}  // namespace exotic
