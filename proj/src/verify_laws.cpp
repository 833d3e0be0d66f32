#include <functional>
#include <map>

#include "exotic/elementary.hpp"
#include "exotic/hopf.hpp"
#include "verify_internal.hpp"

namespace exotic {

using namespace detail;

namespace {

struct LawSetting {
  Expr potential = parse_expr("sin(x1) + 1/4*cos(2*x2)");
  Expr phi = parse_expr("sin(x1)*cos(x2) + cos(x2)");
  VectorField f = VectorField::gradient(potential, 2);
};

// sum over forests of exact order k of a(pi)/sigma(pi) F(pi)[psi]
Expr series_term(const Functional& a, int k, const VectorField& f, const Expr& psi) {
  Expr out;
  for (const Forest& pi : forests_of_order(k)) {
    Rational c = a(pi);
    if (c == 0) continue;
    c /= Rational(symmetry_sigma(pi));
    Expr e = elementary(pi, f, psi);
    e *= c;
    out += e;
  }
  return out;
}

}  // namespace

CheckResult check_composition_law(std::uint64_t seed, int max_order) {
  // S(a)[S(b)[phi]] = S(a * b)[phi], compared power by power in h.
  Tally t{{"composition law"}};
  std::mt19937_64 rng(seed);
  const LawSetting s;
  const Functional a = random_character(rng, max_order);
  const Functional b = random_character(rng, max_order);
  const Functional ab = compose(a, b);
  std::vector<Expr> inner;
  for (int j = 0; j <= max_order; ++j) inner.push_back(series_term(b, j, s.f, s.phi));
  for (int k = 0; k <= max_order; ++k) {
    Expr lhs;
    for (int i = 0; i <= k; ++i) lhs += series_term(a, i, s.f, inner[static_cast<std::size_t>(k - i)]);
    const Expr rhs = series_term(ab, k, s.f, s.phi);
    const Expr residual = lhs - rhs;
    t.expect(residual.is_zero(), [&] { return "h^" + std::to_string(k) + " residual " + to_string(residual); });
  }
  return t.result;
}

CheckResult check_substitution_law(std::uint64_t seed, int max_order) {
  // S(a) evaluated with f replaced by the B-series of b0 equals S(b0_c star a).
  Tally t{{"substitution law"}};
  std::mt19937_64 rng(seed + 1000);
  const LawSetting s;
  const Functional a = random_character(rng, max_order);
  const Functional b0 = random_tree_functional(rng, max_order);

  struct Piece {
    int order;
    Rational coeff;
    VectorField field;
  };
  std::vector<Piece> pieces;
  for (const auto& [tau, v] : b0.stored()) {
    if (v == 0) continue;
    pieces.push_back({tau.order(), v / Rational(symmetry_sigma(tau)), elementary_field(tau, s.f)});
  }

  std::vector<Expr> lhs(static_cast<std::size_t>(max_order) + 1);
  for (int m = 0; m <= max_order; ++m)
    for (const Forest& pi : forests_of_order(m)) {
      const Rational c = a(pi);
      if (c == 0) continue;
      const Rational base = c / Rational(symmetry_sigma(pi));
      std::vector<int> black;
      for (int v = 0; v < pi.size(); ++v)
        if (pi.is_black(v)) black.push_back(v);
      std::vector<VectorField> fields(static_cast<std::size_t>(pi.size()));
      std::function<void(std::size_t, int, Rational)> assign = [&](std::size_t i, int order, Rational coeff) {
        if (i == black.size()) {
          Expr e = elementary(pi, fields, s.phi);
          e *= coeff;
          lhs[static_cast<std::size_t>(order)] += e;
          return;
        }
        for (const Piece& p : pieces) {
          if (order + p.order - 1 > max_order) continue;
          fields[static_cast<std::size_t>(black[i])] = p.field;
          assign(i + 1, order + p.order - 1, coeff * p.coeff);
        }
      };
      assign(0, m, base);
    }

  const Functional sub = substitute(b0, a);
  for (int k = 0; k <= max_order; ++k) {
    const Expr residual = lhs[static_cast<std::size_t>(k)] - series_term(sub, k, s.f, s.phi);
    t.expect(residual.is_zero(), [&] { return "h^" + std::to_string(k) + " residual " + to_string(residual); });
  }
  return t.result;
}

SuiteReport run_laws_suite(std::uint64_t seed, int max_order) {
  SuiteReport r{"laws", {}};
  for (std::uint64_t k = 0; k < 3; ++k) {
    r.checks.push_back(check_composition_law(seed + k, max_order));
    r.checks.push_back(check_substitution_law(seed + k, max_order));
    r.checks.back().name += " (seed " + std::to_string(seed + k) + ")";
    r.checks[r.checks.size() - 2].name += " (seed " + std::to_string(seed + k) + ")";
  }
  return r;
}

}  // namespace exotic
