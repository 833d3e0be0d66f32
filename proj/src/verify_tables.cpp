#include <filesystem>
#include <fstream>
#include <sstream>

#include "exotic/clumped.hpp"
#include "exotic/convolution.hpp"
#include "exotic/elementary.hpp"
#include "exotic/enumerate.hpp"
#include "exotic/hopf.hpp"
#include "exotic/ibp.hpp"
#include "exotic/io.hpp"
#include "exotic/stochastic.hpp"
#include "verify_internal.hpp"

namespace exotic {

using namespace detail;

namespace {

std::string heading(const std::string& title) { return "## " + title + "\n"; }

std::string series_text(const Series& s) { return format_series(s, Format::text); }

std::string table_parse() {
  std::ostringstream o;
  o << "input\tkey\torder\troots\taromas\tlianas\tstolons\tsigma\n";
  for (const char* in : {"{}", "b", "b[b,1],1", "b[b,b]", "1,1", "b[1,1]", "1,1,2,2", "b=b,b", "b[1,1,2,b[2]]",
                         "b[1,1,2,2]", "b[2,2,1,1]", "(b[1]),b=b[2],b[1],2"}) {
    const Forest f = parse(in);
    const Grading& g = f.grading();
    o << in << "\t" << f.key() << "\t" << g.order << "\t" << g.num_roots << "\t" << g.num_aromas << "\t"
      << g.num_lianas << "\t" << g.num_stolons << "\t" << symmetry_sigma(f) << "\n";
  }
  return o.str();
}

std::string table_identity() {
  const Forest a = parse("(b[b[3],1,1]),b[b[2],b[2,3]]");
  const Forest b = parse("(b[b[2],3,3]),b[b[1],b[1,2]]");
  std::ostringstream o;
  o << "(b[b[3],1,1]),b[b[2],b[2,3]]\t" << a.key() << "\n";
  o << "(b[b[2],3,3]),b[b[1],b[1,2]]\t" << b.key() << "\n";
  o << "identical\t" << (a == b ? "yes" : "no") << "\n";
  return o.str();
}

std::string listing(const std::vector<Forest>& fs) {
  std::ostringstream o;
  o << "count\t" << fs.size() << "\n";
  for (const Forest& f : fs) o << f.order() << "\t" << f.key() << "\n";
  return o.str();
}

std::string table_trees() { return listing(enumerate(4, Filter::trees)); }

std::string table_eat() { return listing(enumerate(2, Filter::eat)); }

std::string table_exact_flow() {
  std::ostringstream o;
  o << heading("generator l") << series_text(delta_sigma(generator_character(), enumerate(2)));
  o << heading("exact flow e, order <= 2") << series_text(delta_sigma(exact_flow_character(2), enumerate(2)));
  return o.str();
}

std::string table_euler_maruyama() {
  std::ostringstream o;
  const Functional em = srk_character(named_tableau("em"), 2);
  o << heading("Euler-Maruyama, order <= 2") << series_text(delta_sigma(em, enumerate(2)));
  Functional l = generator_character();
  l.set_truncation(2);
  const Functional ex = exp_conv(Coproduct::deshuffle, l);
  o << heading("deshuffle exponential of l, order <= 2") << series_text(delta_sigma(ex, enumerate(2)));
  return o.str();
}

std::string table_srk_weight() {
  // a(tau) = sum b_i a_ij d_j^2 d_i b_k a_kl a_km for the decorated tree.
  const Forest tau = parse("b[b[1,2],1],2,b[b,b]");
  std::ostringstream o;
  o << "tree\t" << tau.key() << "\n";
  o << "tableau\tweight\tindex sum\n";
  for (const char* name : {"em", "implicit-euler", "trapezoid", "lm"}) {
    const SRKTableau t = named_tableau(name);
    Rational sum = 0;
    for (int i = 0; i < t.s; ++i)
      for (int j = 0; j < t.s; ++j)
        for (int k = 0; k < t.s; ++k)
          for (int l = 0; l < t.s; ++l)
            for (int m = 0; m < t.s; ++m) {
              auto A = [&](int r, int c) { return t.A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
              auto B = [&](int r) { return t.b[static_cast<std::size_t>(r)]; };
              auto D = [&](int r) { return t.d[static_cast<std::size_t>(r)]; };
              sum += B(i) * A(i, j) * D(j) * D(j) * D(i) * B(k) * A(k, l) * A(k, m);
            }
    o << name << "\t" << to_string(srk_weight(t, tau)) << "\t" << to_string(sum) << "\n";
  }
  return o.str();
}

std::string table_grafting() {
  std::ostringstream o;
  o << heading("(b),b[b] -> (b,b),b") << series_text(graft(parse("(b),b[b]"), parse("(b,b),b")));
  o << heading("b[1,1] -> b[b[1],1]") << series_text(graft(parse("b[1,1]"), parse("b[b[1],1]")));
  o << heading("divergence (b),b[b,b]") << series_text(divergence(parse("(b),b[b,b]")));
  o << heading("stolon <(b),b ; b[b]>") << stolon_pair(parse("(b),b"), parse("b[b]")).key() << "\n";
  return o.str();
}

std::string table_gl_antipode() {
  std::ostringstream o;
  for (const char* in : {"(b)", "(b[1,1])", "(b,b)", "b", "b,b", "(b),b"})
    o << heading(std::string("S(") + in + ")") << series_text(antipode_gl(parse(in)));
  return o.str();
}

std::string table_bck() {
  std::ostringstream o;
  for (const char* in : {"(b[1]),b[1,b]", "b[1,1,2,b[2]]"})
    o << heading(in) << format_tensor(bck_coproduct(parse(in)), Format::text);
  return o.str();
}

std::string table_phi() {
  std::ostringstream o;
  o << heading("Phi((b),b . b[b])") << phi(parse_clumped("(b),b . b[b]")).key() << "\n";
  o << heading("Phi*((b),b=b,b,b[b])");
  for (const auto& [p, c] : phi_star(parse("(b),b=b,b,b[b]"))) o << to_string(c) << "\t" << p.key() << "\n";
  return o.str();
}

std::string table_cem() {
  std::ostringstream o;
  for (const char* in : {"(b[1]),b[1,b]", "b[1,1,2,b[2]]", "(b),b[1],1", "(b),b", "b", "b[1],1"})
    o << heading(in) << format_tensor(cem_coaction(parse(in)), Format::text);
  return o.str();
}

std::string table_cem_decorated() {
  std::ostringstream o;
  for (const char* in : {"b", "b[w]", "b[b,w]"})
    o << heading(in) << format_tensor(cem_coaction_decorated(parse(in), "bw"), Format::text);
  return o.str();
}

std::string table_substitution_action() {
  std::ostringstream o;
  o << heading("b[b]@w . w@b . w@b |> w[b,b]")
    << series_text(substitute_action(parse_clumped("b[b]@w . w@b . w@b"), parse("w[b,b]")));
  o << heading("b |> b") << series_text(substitute_action(parse_clumped("b"), parse("b")));
  o << heading("b . b |> b") << series_text(substitute_action(parse_clumped("b . b"), parse("b")));
  return o.str();
}

std::string table_elementary() {
  std::ostringstream o;
  for (const char* in : {"b", "1,1", "b[b]", "b[1,1]", "(b[1]),b=b[2],b[1],2"})
    o << in << "\t" << index_notation(parse(in)) << "\n";
  const VectorField f = VectorField::gradient(parse_expr("cos(x)"), 1);
  o << "1,1 with d = 1, phi = sin(2*x)\t" << to_string(elementary(parse("1,1"), f, parse_expr("sin(2*x)"))) << "\n";
  return o.str();
}

std::string table_ibp() {
  std::ostringstream o;
  for (const char* in : {"1,1", "b[1],1", "b[1,b],1", "b[1,2],1,2", "b,b[b]"}) {
    const Forest pi = parse(in);
    const int r = ibp_default_root(pi);
    o << heading(std::string(in) + " eliminating vertex " + std::to_string(r)) << series_text(ibp_step(pi, r));
  }
  return o.str();
}

std::string table_ibp_map() {
  // A applied to the order-two part of a_EM - e.
  const Functional em = srk_character(named_tableau("em"), 2);
  const Functional diff = em - exact_flow_character(2);
  Functional x(2, false);
  for (const Forest& f : forests_of_order(2)) x.set(f, diff(f));
  const IBPMap m = ibp_map(x, 2);
  std::ostringstream o;
  o << heading("input") << series_text(delta_sigma(x, forests_of_order(2)));
  o << heading("A(input), F-weighted") << series_text(tree_series(m.value, 2));
  o << heading("residual") << series_text(m.residual);
  return o.str();
}

std::string table_bea() {
  const ModifiedField mf = bea_modified_field(srk_character(named_tableau("em"), 3), 3);
  std::ostringstream o;
  o << heading("Euler-Maruyama modified field, order <= 3") << series_text(tree_series(mf.b, 3));
  o << heading("residual") << series_text(mf.residual);
  return o.str();
}

std::string table_modified_equation() {
  const ModifiedField mf = modified_equation(srk_character(named_tableau("em"), 3), 3);
  std::ostringstream o;
  o << heading("Euler-Maruyama, invariant measure order 3") << series_text(tree_series(mf.b, 3));
  o << heading("residual") << series_text(mf.residual);
  return o.str();
}

std::string table_orders() {
  std::ostringstream o;
  o << "method\tweak order (of 3)\tinvariant measure order (of 3)\n";
  for (const char* name : {"em", "implicit-euler", "trapezoid", "lm"}) {
    const Functional a = srk_character(named_tableau(name), 3);
    o << name << "\t" << check_weak_order(a, 3).order << "\t" << invariant_measure_order(a, 3).order << "\n";
  }
  const OrderReport post = postprocessor_check(srk_character(named_tableau("lm"), 3),
                                               srk_character(named_tableau("lm-post"), 3), 3);
  o << "lm with postprocessor\t-\t" << post.order << "\n";
  return o.str();
}

}  // namespace

const std::vector<GoldenTable>& reference_tables() {
  static const std::vector<GoldenTable> tables = {
      {"parse", table_parse},
      {"canonical_identity", table_identity},
      {"trees_upto_4", table_trees},
      {"eat_upto_2", table_eat},
      {"exact_flow", table_exact_flow},
      {"euler_maruyama", table_euler_maruyama},
      {"srk_weight", table_srk_weight},
      {"grafting", table_grafting},
      {"gl_antipode", table_gl_antipode},
      {"bck", table_bck},
      {"phi", table_phi},
      {"cem", table_cem},
      {"cem_decorated", table_cem_decorated},
      {"substitution_action", table_substitution_action},
      {"elementary", table_elementary},
      {"ibp", table_ibp},
      {"ibp_map", table_ibp_map},
      {"bea_em", table_bea},
      {"modified_equation_em", table_modified_equation},
      {"orders", table_orders},
  };
  return tables;
}

SuiteReport run_reference_tables(const std::string& golden_dir, bool update) {
  namespace fs = std::filesystem;
  SuiteReport r{"reference-tables", {}};
  if (update) fs::create_directories(golden_dir);
  for (const GoldenTable& g : reference_tables()) {
    CheckResult c{g.name};
    c.cases = 1;
    const fs::path path = fs::path(golden_dir) / (g.name + ".txt");
    std::string got;
    try {
      got = g.produce();
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("error: ") + e.what();
      r.checks.push_back(c);
      continue;
    }
    if (update) {
      std::ofstream(path) << got;
      c.detail = "written";
    } else {
      std::ifstream in(path);
      if (!in) {
        c.passed = false;
        c.detail = "missing " + path.string();
      } else {
        std::stringstream want;
        want << in.rdbuf();
        if (want.str() != got) {
          c.passed = false;
          // First differing line.
          std::istringstream a(want.str()), b(got);
          std::string la, lb;
          int line = 1;
          while (true) {
            bool ea = !std::getline(a, la), eb = !std::getline(b, lb);
            if (ea && eb) break;
            if (ea || eb || la != lb) {
              c.detail = "line " + std::to_string(line) + ": expected '" + (ea ? "<eof>" : la) + "', got '" +
                         (eb ? "<eof>" : lb) + "'";
              break;
            }
            ++line;
          }
        }
      }
    }
    r.checks.push_back(c);
  }
  return r;
}

}  // namespace exotic
