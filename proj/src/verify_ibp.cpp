#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "exotic/elementary.hpp"
#include "exotic/ibp.hpp"
#include "exotic/quadrature.hpp"
#include "verify_internal.hpp"

namespace exotic {

using namespace detail;

namespace detail {

const std::vector<Series>& reference_ibp_relations() {
  // lhs - rhs for each displayed relation, F-weighted.
  static const std::vector<Series> rel = [] {
    std::vector<Series> out;
    auto make = [](std::initializer_list<std::pair<const char*, int>> terms) {
      Series s;
      for (const auto& [k, c] : terms) s.add(parse(k), c);
      return s;
    };
    out.push_back(make({{"1,1", 1}, {"b", 2}}));
    out.push_back(make({{"b[1],1", 1}, {"b[1,1]", 1}, {"b[b]", 2}}));
    out.push_back(make({{"b[1,b],1", 1}, {"b[1,1,b]", 1}, {"b[1,b[1]]", 1}, {"b[b,b]", 2}}));
    out.push_back(make({{"b[1,2],1,2", 1}, {"b[1,2,2],1", 1}, {"b[1,b],1", 2}}));
    return out;
  }();
  return rel;
}

Series kernel_element(bool corrected) {
  static const std::pair<const char*, int> terms[] = {
      {"b[1,1,b[b]]", 26},   {"b[1,1,2,2]", -13},   {"b[b[b[1]],1]", -5}, {"b[b[b,1,1]]", -21},  {"b[b[b[1],1]]", 5},
      {"b[b[1,1],b]", -5},   {"b[b[b,b]]", 10},     {"b[b[1],1,2,2]", 13}, {"b[b[1,2,2],1]", -13}, {"b[b[b],b]", -10},
      {"b[b[1],1,b]", -5},   {"b[b[b,1],1]", 5},    {"b[1,1,b[2,2]]", 13}};
  Series s;
  for (const auto& [k, c] : terms) {
    // The second term is given with one vertex missing; the order-four
    // tree that makes the combination vanish is b[b[1,1,2,2]].
    std::string key = corrected && std::string(k) == "b[1,1,2,2]" ? "b[b[1,1,2,2]]" : k;
    s.add(parse(key), c);
  }
  return s;
}

IntegralCache::IntegralCache(const Expr& potential, const Expr& phi, int dim, int points)
    : phi_(phi), f_(VectorField::gradient(potential, dim)), grid_(std::make_shared<QuadratureGrid>(potential, dim, points)) {}

double IntegralCache::operator()(const Forest& pi) {
  auto it = cache_.find(pi.key());
  if (it != cache_.end()) return it->second;
  double v = grid_->integrate(elementary(pi, f_, phi_));
  cache_.emplace(pi.key(), v);
  return v;
}

QuadratureResult IntegralCache::integrate(const Series& s) {
  QuadratureResult r;
  long double acc = 0;
  for (const auto& [pi, c] : s.terms()) {
    double term = (*this)(pi) * c.get_d();
    acc += term;
    r.scale += std::abs(term);
  }
  r.value = static_cast<double>(acc);
  return r;
}

const std::vector<std::pair<std::string, std::string>>& test_potentials() {
  static const std::vector<std::pair<std::string, std::string>> p = {
      {"sin(x) + 1/4*cos(2*x)", "cos(2*x)"},
      {"cos(x) + 1/3*sin(2*x)", "sin(x) + cos(3*x)"},
      {"1/2*cos(x) - 1/5*sin(3*x)", "sin(2*x) + 1/2*cos(x)"},
  };
  return p;
}

std::string sci(double x) {
  std::ostringstream o;
  o.precision(2);
  o << std::scientific << x;
  return o.str();
}

}  // namespace detail

CheckResult check_ibp_relations() {
  Tally t{{"reference relations"}};
  const auto& rel = reference_ibp_relations();
  // Each relation is a single elimination of its multi-root forest.
  const char* sources[] = {"1,1", "b[1],1", "b[1,b],1", "b[1,2],1,2"};
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const Forest pi = parse(sources[i]);
    Series rhs;
    for (const auto& [f, c] : rel[i].terms())
      if (f != pi) rhs.add(f, -c);
    const Series step = ibp_step(pi, ibp_default_root(pi));
    t.expect(step == rhs, [&] { return std::string(sources[i]) + " -> " + brief(step); });
  }
  for (const auto& [v, phi] : test_potentials()) {
    IntegralCache cache(parse_expr(v), parse_expr(phi), 1, 2048);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const QuadratureResult q = cache.integrate(rel[i]);
      t.expect(std::abs(q.value) <= 1e-10 * q.scale,
               [&] { return std::string(sources[i]) + " quadrature " + sci(q.relative()) + " for V = " + v; });
    }
  }
  return t.result;
}

CheckResult check_ibp_step_quadrature(int max_order, int points, double tol) {
  Tally t{{"ibp_step preserves integrals"}};
  double worst = 0;
  for (const auto& [v, phi] : test_potentials()) {
    IntegralCache cache(parse_expr(v), parse_expr(phi), 1, points);
    for (int n = 1; n <= max_order; ++n)
      for (const Forest& pi : forests_of_order(n)) {
        if (pi.grading().num_roots < 2) continue;
        for (int r : pi.data().roots) {
          const Series s = Series(pi, 1) - ibp_step(pi, r);
          const QuadratureResult q = cache.integrate(s);
          worst = std::max(worst, std::abs(q.relative()));
          t.expect(std::abs(q.value) <= tol * q.scale,
                   [&] { return pi.key() + " root " + std::to_string(r) + ": " + sci(q.relative()); });
        }
      }
  }
  if (t.result.passed) t.result.detail = "worst relative " + sci(worst);
  return t.result;
}

CheckResult check_ibp_normalize_quadrature(int max_order, int points, double tol) {
  Tally t{{"ibp_normalize preserves integrals"}};
  double worst = 0;
  for (const auto& [v, phi] : test_potentials()) {
    IntegralCache cache(parse_expr(v), parse_expr(phi), 1, points);
    for (int n = 1; n <= max_order; ++n)
      for (const Forest& pi : forests_of_order(n)) {
        const IBPNormalForm nf = ibp_normalize(Series(pi, 1));
        const Series s = Series(pi, 1) - nf.trees - nf.residual;
        const QuadratureResult q = cache.integrate(s);
        worst = std::max(worst, std::abs(q.relative()));
        t.expect(std::abs(q.value) <= tol * q.scale, [&] { return pi.key() + ": " + sci(q.relative()); });
      }
  }
  if (t.result.passed) t.result.detail = "worst relative " + sci(worst);
  return t.result;
}

CheckResult check_ibp_confluence(int max_order, int permutations, std::uint64_t seed) {
  Tally t{{"normal form independent of elimination order"}};
  for (int n = 1; n <= max_order; ++n)
    for (const Forest& pi : forests_of_order(n)) {
      const IBPNormalForm ref = ibp_normalize(Series(pi, 1));
      for (int k = 0; k < permutations; ++k) {
        IBPOptions opt;
        opt.seed = seed + static_cast<std::uint64_t>(k);
        const IBPNormalForm other = ibp_normalize(Series(pi, 1), opt);
        t.expect(other.trees == ref.trees && other.residual == ref.residual,
                 [&] { return pi.key() + " seed " + std::to_string(*opt.seed); });
      }
    }
  return t.result;
}

namespace {

CheckResult check_kernel_element() {
  Tally t{{"order-four kernel element"}};
  IBPOptions opt;
  opt.reduce_trees = true;
  const IBPNormalForm nf = ibp_normalize(kernel_element(true), opt);
  t.expect(nf.trees.empty() && nf.residual.empty(), [&] { return "engine: " + brief(nf.trees); });
  for (const auto& [v, phi] : test_potentials()) {
    IntegralCache cache(parse_expr(v), parse_expr(phi), 1, 2048);
    const QuadratureResult q = cache.integrate(kernel_element(true));
    t.expect(std::abs(q.value) <= 1e-8 * q.scale, [&] { return "quadrature " + sci(q.relative()); });
  }
  return t.result;
}

}  // namespace

SuiteReport run_ibp_suite(std::uint64_t seed) {
  SuiteReport r{"ibp", {}};
  r.checks.push_back(check_ibp_relations());
  r.checks.push_back(check_ibp_step_quadrature(4, 2048, 1e-10));
  r.checks.push_back(check_ibp_normalize_quadrature(4, 2048, 1e-9));
  r.checks.push_back(check_ibp_confluence(3, 4, seed));
  r.checks.push_back(check_kernel_element());
  return r;
}

}  // namespace exotic
