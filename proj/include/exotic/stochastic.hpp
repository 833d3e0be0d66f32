#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "exotic/forest.hpp"
#include "exotic/ibp.hpp"
#include "exotic/series.hpp"

namespace exotic {

// Y_i = X + h sum_j A_ij f(Y_j) + sqrt(h) d_i xi
// X'  = X + h sum_i b_i f(Y_i) + sqrt(h) d0 xi
struct SRKTableau {
  int s = 1;
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> d;
  Rational d0 = 1;

  void validate() const;
  bool explicit_method() const;
};

// Text format, one "key = value" per line, '#' comments:
//   s = 2
//   A = 0 0; 1/2 1/2
//   b = 1/2 1/2
//   d = 0 1
//   d0 = 1
SRKTableau parse_tableau(std::string_view text);
std::string format_tableau(const SRKTableau& t);
// em, implicit-euler, trapezoid, lm, lm-post
SRKTableau named_tableau(std::string_view name);

// l(b) = 1, l(1,1) = 1, zero elsewhere.
Functional generator_character();
// e = exp*(l) for the BCK convolution.
Functional exact_flow_character(int max_order);
Functional srk_character(const SRKTableau& t, int max_order);
// Weight of a single connected exotic forest under the tableau rule.
Rational srk_weight(const SRKTableau& t, const Forest& pi);

struct OrderCondition {
  Forest forest;
  Rational value;
};
// Exotic forests of order 1..p with the exact-flow values a must match.
std::vector<OrderCondition> weak_order_conditions(int p);

struct OrderReport {
  int order = 0;  // largest verified order (<= requested)
  int requested = 0;
  // Order where the verdict stops being a complete decision.
  bool beyond_unique_range = false;
  // First failing order: forests and defects (coefficient values for weak
  // order, F-weighted normal form for the invariant measure).
  Series defect;
  Series residual;
  bool passed() const { return order >= requested; }
};

OrderReport check_weak_order(const Functional& a, int p);
// a - delta_1 ~ 0 through order p.
OrderReport invariant_measure_order(const Functional& a, int p);
// a - delta_1 + [l, abar] ~ 0 through order p, [x, y] = x * y - y * x.
OrderReport postprocessor_check(const Functional& a, const Functional& abar, int p);

// Checks x ~ 0 order by order; x is a functional (not F-weighted).
OrderReport equivalent_to_zero(const Functional& x, int p);

enum class BEAMethod { recursion, closed };

struct ModifiedField {
  Functional b;     // coefficients on exotic trees
  Series residual;  // non-tree leftovers of the IBP map, expected empty
};

// b with b_c star e ~ a.
ModifiedField bea_modified_field(const Functional& a, int max_order, BEAMethod method = BEAMethod::recursion);
// b with b_c star a ~ delta_1.
ModifiedField modified_equation(const Functional& a, int max_order, BEAMethod method = BEAMethod::recursion);

// delta_sigma restricted to exotic trees: the F-weighted coefficients of B(b).
Series tree_series(const Functional& b, int max_order);

}  // namespace exotic
