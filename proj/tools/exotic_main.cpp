#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "exotic/clumped.hpp"
#include "exotic/convolution.hpp"
#include "exotic/elementary.hpp"
#include "exotic/enumerate.hpp"
#include "exotic/hopf.hpp"
#include "exotic/ibp.hpp"
#include "exotic/io.hpp"
#include "exotic/quadrature.hpp"
#include "exotic/simulate.hpp"
#include "exotic/stochastic.hpp"
#include "exotic/verify.hpp"

using namespace exotic;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// A character given as: exact, generator, a named tableau, a tableau file or
// a JSON series (F-weighted).
Functional load_functional(const std::string& spec, int order) {
  if (spec == "exact") return exact_flow_character(order);
  if (spec == "generator") {
    Functional l = generator_character();
    l.set_truncation(order);
    return l;
  }
  if (std::filesystem::exists(spec)) {
    const std::string text = read_file(spec);
    if (spec.ends_with(".json")) {
      Functional a = delta_sigma_inv(series_from_json(text));
      a.set_truncation(order);
      return a;
    }
    return srk_character(parse_tableau(text), order);
  }
  return srk_character(named_tableau(spec), order);
}

SRKTableau load_tableau(const std::string& spec) {
  if (std::filesystem::exists(spec)) return parse_tableau(read_file(spec));
  return named_tableau(spec);
}

Series load_series(const std::string& forest, const std::string& file) {
  if (!forest.empty() && !file.empty()) throw UsageError("give either --forest or --series");
  if (!forest.empty()) return Series(parse(forest), 1);
  if (!file.empty()) return series_from_json(read_file(file));
  throw UsageError("missing --forest or --series");
}

std::string functional_out(const Functional& a, int order, Format fmt) {
  return format_series(delta_sigma(a, enumerate(order)), fmt);
}

std::string report_out(const OrderReport& r, const std::string& what, Format fmt) {
  if (fmt == Format::json) {
    json j;
    j["order"] = r.order;
    j["requested"] = r.requested;
    j["passed"] = r.passed();
    j["beyond_unique_range"] = r.beyond_unique_range;
    j["defect"] = json::parse(series_to_json(r.defect));
    j["residual"] = json::parse(series_to_json(r.residual));
    return j.dump(2) + "\n";
  }
  std::ostringstream o;
  o << what << ": order " << r.order << " (requested " << r.requested << ")"
    << (r.passed() ? "" : ", failed") << "\n";
  if (r.beyond_unique_range) o << "note: verdict beyond order 3 is a sufficient condition only\n";
  if (!r.defect.empty()) o << "defect:\n" << format_series(r.defect, fmt == Format::latex ? fmt : Format::text);
  if (!r.residual.empty()) o << "residual:\n" << format_series(r.residual, Format::text);
  return o.str();
}

std::string modified_out(const ModifiedField& mf, int order, Format fmt) {
  std::string out = format_series(tree_series(mf.b, order), fmt);
  if (!mf.residual.empty()) {
    if (fmt == Format::json) throw std::runtime_error("nonzero residual:\n" + format_series(mf.residual, Format::text));
    out += "residual:\n" + format_series(mf.residual, Format::text);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exotic aromatic forests: algebra, order conditions and backward error analysis"};
  app.require_subcommand(1);
  std::string format_name = "text";
  app.add_option("--format", format_name, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for randomized commands");

  int order = 2;
  std::string forest, series_file, filter = "all";

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List forests up to an order");
  enumerate_cmd->add_option("--order", order)->required();
  enumerate_cmd->add_option("--filter", filter, "all, trees, et, eat, aromas, connected, no-aromas");

  auto* sigma_cmd = app.add_subcommand("sigma", "Symmetry coefficient");
  sigma_cmd->add_option("--forest", forest)->required();

  auto* parse_cmd = app.add_subcommand("parse", "Canonical key and gradings");
  parse_cmd->add_option("--forest", forest)->required();

  std::string kind = "bck", alphabet = "bw";
  auto* coproduct_cmd = app.add_subcommand("coproduct", "Coproduct or coaction of a forest");
  coproduct_cmd->add_option("--kind", kind, "deshuffle, deshuffle-aroma-linear, bck, cem, cem-reduced, cem-decorated");
  coproduct_cmd->add_option("--forest", forest)->required();
  coproduct_cmd->add_option("--alphabet", alphabet, "Decorations for cem-decorated");

  std::string a_spec, b_spec;
  auto* compose_cmd = app.add_subcommand("compose", "Composition a * b of two characters");
  compose_cmd->add_option("--a", a_spec)->required();
  compose_cmd->add_option("--b", b_spec)->required();
  compose_cmd->add_option("--order", order);

  auto* substitute_cmd = app.add_subcommand("substitute", "Substitution b_c star a");
  substitute_cmd->add_option("--b0", b_spec, "JSON series of tree coefficients (F-weighted)")->required();
  substitute_cmd->add_option("--a", a_spec)->required();
  substitute_cmd->add_option("--order", order);

  auto* exact_cmd = app.add_subcommand("exact-flow", "Exact flow character e");
  exact_cmd->add_option("--order", order);

  std::string method = "em";
  auto* srk_cmd = app.add_subcommand("srk-character", "Character of a stochastic Runge-Kutta method");
  srk_cmd->add_option("--method", method, "Named tableau or tableau file");
  srk_cmd->add_option("--order", order);

  auto* conditions_cmd = app.add_subcommand("order-conditions", "Weak order conditions, or a method's weak order");
  conditions_cmd->add_option("--order", order);
  std::string check_method;
  conditions_cmd->add_option("--method", check_method, "Check this method against the conditions");
  bool invariant = false;
  conditions_cmd->add_flag("--invariant-measure", invariant, "Check the order for the invariant measure instead");

  int root = -1;
  bool reduce_trees = false;
  auto* ibp_cmd = app.add_subcommand("ibp", "Integration by parts normal form (F-weighted)");
  ibp_cmd->add_option("--forest", forest);
  ibp_cmd->add_option("--series", series_file);
  ibp_cmd->add_option("--root", root, "Perform a single elimination of this root vertex");
  ibp_cmd->add_flag("--reduce-trees", reduce_trees);

  bool closed = false;
  auto* bea_cmd = app.add_subcommand("bea", "Modified vector field of backward error analysis");
  bea_cmd->add_option("--method", method);
  bea_cmd->add_option("--order", order);
  bea_cmd->add_flag("--closed", closed, "Closed formula instead of the recursion");

  auto* modified_cmd = app.add_subcommand("modified-eq", "Modified equation for invariant measure order");
  modified_cmd->add_option("--method", method);
  modified_cmd->add_option("--order", order);
  modified_cmd->add_flag("--closed", closed);

  std::string post = "lm-post";
  auto* post_cmd = app.add_subcommand("postprocessor-check", "Invariant measure order with a postprocessor");
  post_cmd->add_option("--method", method);
  post_cmd->add_option("--post", post);
  post_cmd->add_option("--order", order);

  std::string potential = "sin(x) + 1/4*cos(2*x)", phi_text = "cos(x)";
  int dim = 1, grid = 1024;
  auto* quad_cmd = app.add_subcommand("quadrature", "Integral of F(S)[phi] against exp(-2V)");
  quad_cmd->add_option("--forest", forest);
  quad_cmd->add_option("--series", series_file);
  quad_cmd->add_option("--potential", potential);
  quad_cmd->add_option("--phi", phi_text);
  quad_cmd->add_option("--dim", dim)->check(CLI::Range(1, 2));
  quad_cmd->add_option("--grid", grid);

  SimulationConfig sim;
  int modified_order = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Ergodic average along a method on the circle");
  sim_cmd->set_help_flag("--help", "Print this help message and exit");
  sim_cmd->add_option("--method", method, "Tableau name or file");
  sim_cmd->add_option("--potential", potential, "Potential V(x1)");
  sim_cmd->add_option("--phi", phi_text, "Test function");
  sim_cmd->add_option("--h", sim.h, "Step size");
  sim_cmd->add_option("--steps", sim.steps, "Steps per trajectory");
  sim_cmd->add_option("--burn-in", sim.burn_in, "Discarded initial steps");
  sim_cmd->add_option("--trajectories", sim.trajectories, "Independent trajectories");
  sim_cmd->add_option("--modified-order", modified_order, "Apply the method to its modified equation of this order");
  sim_cmd->add_option("--grid", grid, "Quadrature points for the reference value");

  std::string suite, golden = "golden";
  bool update = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", suite)->required()->check(CLI::IsMember({"hopf", "ibp", "laws", "reference-tables"}));
  verify_cmd->add_option("--golden", golden, "Directory of golden tables");
  verify_cmd->add_flag("--update", update, "Rewrite the golden tables");
  verify_cmd->add_option("--order", order, "Largest order for the hopf and laws suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Format fmt = parse_format(format_name);
    std::ostream& out = std::cout;

    if (*enumerate_cmd) {
      const auto fs = enumerate(order, parse_filter(filter));
      if (fmt == Format::json) {
        json j = json::array();
        for (const Forest& f : fs) j.push_back({{"forest", f.key()}, {"order", f.order()}});
        out << j.dump(2) << "\n";
      } else {
        for (const Forest& f : fs)
          out << f.order() << "\t" << (fmt == Format::latex ? "\\forest{" + f.key() + "}" : f.key()) << "\n";
      }
      std::cerr << fs.size() << " forests\n";
    } else if (*sigma_cmd) {
      out << symmetry_sigma(parse(forest)) << "\n";
    } else if (*parse_cmd) {
      const Forest f = parse(forest);
      const Grading& g = f.grading();
      json j = {{"key", f.key()},          {"order", g.order},         {"roots", g.num_roots},
                {"black", g.num_black},    {"lianas", g.num_lianas},   {"stolons", g.num_stolons},
                {"aromas", g.num_aromas},  {"edges", g.num_edges},     {"sigma", symmetry_sigma(f)}};
      if (fmt == Format::json) {
        out << j.dump(2) << "\n";
      } else {
        for (const auto& [k, v] : j.items()) out << k << "\t" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        if (f.data().raw.v.size() > 0 && !f.has_letters()) out << "F\t" << index_notation(f) << "\n";
      }
    } else if (*coproduct_cmd) {
      const Forest f = parse(forest);
      if (kind == "cem-decorated") {
        out << format_tensor(cem_coaction_decorated(f, alphabet), fmt);
      } else {
        switch (parse_coproduct(kind)) {
          case Coproduct::deshuffle: out << format_tensor(deshuffle(f), fmt); break;
          case Coproduct::deshuffle_aroma_linear: out << format_tensor(deshuffle(f, true), fmt); break;
          case Coproduct::bck: out << format_tensor(bck_coproduct(f), fmt); break;
          case Coproduct::cem: out << format_tensor(cem_coaction(f), fmt); break;
          case Coproduct::cem_reduced: out << format_tensor(cem_coaction_reduced(f), fmt); break;
        }
      }
    } else if (*compose_cmd) {
      out << functional_out(compose(load_functional(a_spec, order), load_functional(b_spec, order)), order, fmt);
    } else if (*substitute_cmd) {
      Functional b0 = delta_sigma_inv(series_from_json(read_file(b_spec)));
      b0.set_truncation(order);
      out << functional_out(substitute(b0, load_functional(a_spec, order)), order, fmt);
    } else if (*exact_cmd) {
      out << functional_out(exact_flow_character(order), order, fmt);
    } else if (*srk_cmd) {
      out << functional_out(srk_character(load_tableau(method), order), order, fmt);
    } else if (*conditions_cmd) {
      if (check_method.empty()) {
        Series s;
        for (const OrderCondition& c : weak_order_conditions(order)) s.add(c.forest, c.value);
        out << format_series(s, fmt);
      } else {
        const Functional a = srk_character(load_tableau(check_method), order);
        const OrderReport r = invariant ? invariant_measure_order(a, order) : check_weak_order(a, order);
        out << report_out(r, invariant ? "invariant measure" : "weak", fmt);
        return r.passed() ? 0 : 1;
      }
    } else if (*ibp_cmd) {
      const Series s = load_series(forest, series_file);
      if (root >= 0) {
        if (s.size() != 1) throw UsageError("--root needs a single forest");
        out << format_series(ibp_step(s.terms().begin()->first, root), fmt);
      } else {
        IBPOptions opt;
        opt.reduce_trees = reduce_trees;
        const IBPNormalForm nf = ibp_normalize(s, opt);
        out << format_series(nf.trees, fmt);
        if (!nf.clean()) {
          std::cerr << "residual:\n" << format_series(nf.residual, Format::text);
          return 1;
        }
      }
    } else if (*bea_cmd) {
      const Functional a = srk_character(load_tableau(method), order);
      out << modified_out(bea_modified_field(a, order, closed ? BEAMethod::closed : BEAMethod::recursion), order, fmt);
    } else if (*modified_cmd) {
      const Functional a = srk_character(load_tableau(method), order);
      out << modified_out(modified_equation(a, order, closed ? BEAMethod::closed : BEAMethod::recursion), order, fmt);
    } else if (*post_cmd) {
      const OrderReport r =
          postprocessor_check(srk_character(load_tableau(method), order), srk_character(load_tableau(post), order), order);
      out << report_out(r, "invariant measure with postprocessor", fmt);
      return r.passed() ? 0 : 1;
    } else if (*quad_cmd) {
      const Series s = load_series(forest, series_file);
      const QuadratureResult q =
          quadrature_invariant_integral(s, parse_expr(potential), parse_expr(phi_text), dim, grid);
      if (fmt == Format::json) {
        out << json{{"value", q.value}, {"scale", q.scale}}.dump(2) << "\n";
      } else {
        out.precision(16);
        out << "value\t" << q.value << "\nscale\t" << q.scale << "\n";
      }
    } else if (*sim_cmd) {
      sim.seed = seed;
      const SRKTableau t = load_tableau(method);
      const Expr v = parse_expr(potential);
      const Expr obs = parse_expr(phi_text);
      VectorField f = VectorField::gradient(v, 1);
      if (modified_order > 0) {
        const ModifiedField mf = modified_equation(srk_character(t, modified_order), modified_order);
        f = modified_vector_field(mf.b, v, sim.h, modified_order);
      }
      const SimulationReport r = simulate(t, f, obs, sim);
      const double exact = QuadratureGrid(v, 1, grid).integrate(obs);
      if (fmt == Format::json) {
        out << json{{"mean", r.mean}, {"std_error", r.std_error}, {"exact", exact}, {"error", r.mean - exact},
                    {"steps", r.total_steps}}
                   .dump(2)
            << "\n";
      } else {
        out.precision(10);
        out << "mean\t" << r.mean << "\nstd_error\t" << r.std_error << "\nexact\t" << exact << "\nerror\t"
            << r.mean - exact << "\nsteps\t" << r.total_steps << "\n";
      }
    } else if (*verify_cmd) {
      SuiteReport r;
      if (suite == "hopf") r = run_hopf_suite(verify_cmd->count("--order") ? order : 3);
      else if (suite == "ibp") r = run_ibp_suite(seed);
      else if (suite == "laws") r = run_laws_suite(seed, verify_cmd->count("--order") ? order : 3);
      else r = run_reference_tables(golden, update);
      out << format_report(r);
      return r.passed() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ForestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
