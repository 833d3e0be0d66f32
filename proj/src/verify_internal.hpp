#pragma once

// Helpers shared by the verification sources.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include <map>
#include <memory>

#include "exotic/elementary.hpp"
#include "exotic/enumerate.hpp"
#include "exotic/quadrature.hpp"
#include "exotic/series.hpp"
#include "exotic/verify.hpp"

namespace exotic::detail {

// Copy of the term map, safe to iterate when t is a temporary.
template <class T>
auto terms_of(const T& t) {
  return t.terms();
}

struct Tally {
  CheckResult result;
  void expect(bool ok, const std::function<std::string()>& what);
};

std::string brief(const Series& s);
std::vector<Forest> forests_upto(int n, Filter filter = Filter::all);
std::vector<Forest> rooted_trees_upto(int n);
// Every connected factor carries at most one root.
bool single_rooted_factors(const Forest& f);
// Automorphism count by trying every vertex permutation.
std::uint64_t brute_sigma(const Forest& f);

Rational random_rational(std::mt19937_64& rng);
Functional random_character(std::mt19937_64& rng, int max_order);
Functional random_functional(std::mt19937_64& rng, int max_order);
// Values on single-root forests with a node root.
Functional random_tree_functional(std::mt19937_64& rng, int max_order);

// lhs - rhs of the four displayed IBP relations (F-weighted).
const std::vector<Series>& reference_ibp_relations();
// The displayed order-four kernel combination, optionally with the mistyped
// tree replaced.
Series kernel_element(bool corrected);

// Integrals of F(pi)[phi] against exp(-2V), memoized per forest.
class IntegralCache {
 public:
  IntegralCache(const Expr& potential, const Expr& phi, int dim, int points);
  double operator()(const Forest& pi);
  QuadratureResult integrate(const Series& s);

 private:
  Expr phi_;
  VectorField f_;
  std::shared_ptr<QuadratureGrid> grid_;
  std::map<std::string, double> cache_;
};

// (V, phi) pairs on the one-dimensional torus.
const std::vector<std::pair<std::string, std::string>>& test_potentials();
std::string sci(double x);

}  // namespace exotic::detail
