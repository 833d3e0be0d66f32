#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace exotic {

struct CheckResult {
  CheckResult() = default;
  CheckResult(std::string n) : name(std::move(n)) {}  // NOLINT(google-explicit-constructor)

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first counterexample, or a measured quantity
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

std::string format_report(const SuiteReport& r);

// Algebraic identities checked exhaustively on forests of order <= max_order
// (triples are limited to total order <= max_order + 1).
SuiteReport run_hopf_suite(int max_order = 3);

// Individual Hopf checks, shared with the unit tests.
CheckResult check_pre_lie(int max_order);
CheckResult check_leibniz(int max_order);
CheckResult check_guin_oudom(int max_order);
CheckResult check_gl_associativity(int max_order);
CheckResult check_gl_action(int max_order);
CheckResult check_bck_coassociativity(int max_order);
CheckResult check_gl_bialgebra(int max_order);
CheckResult check_antipode(int max_order);
CheckResult check_hopf_brace(int max_order);
CheckResult check_action_antipode(int max_order);
CheckResult check_duality(int max_order);
CheckResult check_cointeraction(int max_order, std::uint64_t seed);

// Reference relations, equivalence preservation and confluence of the IBP
// rewriting.
SuiteReport run_ibp_suite(std::uint64_t seed = 1);

CheckResult check_ibp_relations();
// Every ibp_step output for forests of order <= max_order integrates like its
// input; worst relative discrepancy in detail.
CheckResult check_ibp_step_quadrature(int max_order, int points, double tol);
CheckResult check_ibp_normalize_quadrature(int max_order, int points, double tol);
CheckResult check_ibp_confluence(int max_order, int permutations, std::uint64_t seed);

// Composition and substitution laws on elementary differentials in two
// dimensions, with random characters.
SuiteReport run_laws_suite(std::uint64_t seed = 1, int max_order = 3);
CheckResult check_composition_law(std::uint64_t seed, int max_order);
CheckResult check_substitution_law(std::uint64_t seed, int max_order);

// Text tables reproducing the worked examples; each is diffed against a
// golden file <dir>/<name>.txt.
struct GoldenTable {
  std::string name;
  std::function<std::string()> produce;
};
const std::vector<GoldenTable>& reference_tables();
SuiteReport run_reference_tables(const std::string& golden_dir, bool update);

}  // namespace exotic
